#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tbound::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_cap = 3,
    exit_violation = 4,
};

struct ActivationOpts {
    std::vector<std::string> kinds{"softplus", "gelu", "tanh", "swish"};
    int s_max = 10;
    double lo = -30.0;
    double hi = 30.0;
    bool raw = false; // full precision instead of table style
    std::string out = "-";
};

struct BlockOpts {
    std::string config;
    std::string block = "multihead";
    std::string variant = "level";
    std::string mode = "exact";
    int max_order = 5;
    std::string out = "-";
};

struct TransformerOpts {
    std::string config;
    std::string variant = "type";
    std::string mode = "exact";
    int max_order = 3;
    std::string out = "-";
};

struct GenboundOpts {
    std::string config; // optional JSON carrying kappa, delta, Md, constants
    double kappa = 0.5;
    double delta = 0.05;
    int md = 2;
    std::string constants; // CSV path (s,C rows) or inline list C_{s0},C_{s0+1},...
    int s0 = 0;
    int s_max = -1; // all indexed orders
    std::optional<std::int64_t> t; // empty: infinite horizon
    std::int64_t n_min = 10;
    std::int64_t n_max = 1'000'000;
    int per_decade = 10;
    std::string out = "-";
};

struct TransitionsOpts {
    std::string config;
    double kappa = 0.5;
    double delta = 0.05;
    int md = 2;
    std::string constants;
    int s0 = 0;
    int s_max = 5;
    std::int64_t n_cap = 1'000'000'000'000LL;
    std::string out = "-";
};

struct VerifyOpts {
    std::string config;
    std::string component = "block";
    int order = 2;
    int trials = 50;
    std::uint64_t seed = 1;
    double fd_step = 0.0; // 0 selects the per-order default
    int grid = 64;
    std::string out = "-";
};

struct FigureOpts {
    std::string which = "activation_curves";
    std::string out = "-";
};

// Each returns an ExitCode; config problems surface as ConfigError for the dispatcher.
int run_activation(const ActivationOpts& o);
int run_block_bounds(const BlockOpts& o);
int run_transformer_bounds(const TransformerOpts& o);
int run_genbound(const GenboundOpts& o);
int run_transitions(const TransitionsOpts& o);
int run_verify(const VerifyOpts& o);
int run_figure(const FigureOpts& o);

// Reads TBOUND_ENUM_CAP when set; throws ConfigError on a malformed value.
void apply_env_cap();

} // namespace tbound::cli
