#include "commands.hpp"

#include "config.hpp"
#include "emit.hpp"

#include "tbound/composer.hpp"
#include "tbound/oracle.hpp"
#include "tbound/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tbound::cli {

using nlohmann::json;

namespace {

template <class T, class F>
T parse_or_config(F f, const std::string& what)
{
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

FactorMode parse_mode(const std::string& s)
{
    return parse_or_config<FactorMode>([&] { return factor_mode_from_string(s); }, "--mode");
}

Variant parse_variant(const std::string& s)
{
    return parse_or_config<Variant>([&] { return variant_from_string(s); }, "--variant");
}

std::string key_string(const MultiIndex& key)
{
    std::string s = "(";
    for (std::size_t j = 0; j < key.size(); ++j)
        s += (j ? ";" : "") + std::to_string(key[j]);
    return s + ")";
}

std::vector<std::string> bound_cells(LogMag v)
{
    return {format_table_value(v), fmt_log10(v)};
}

void require_order(int n, const std::string& flag)
{
    if (n < 1)
        throw ConfigError(flag + ": must be at least 1");
}

} // namespace

void apply_env_cap()
{
    const char* env = std::getenv("TBOUND_ENUM_CAP");
    if (!env || !*env)
        return;
    try {
        std::size_t used = 0;
        int cap = std::stoi(env, &used);
        if (used != std::string(env).size() || cap < 1)
            throw std::invalid_argument(env);
        set_enumeration_cap(cap);
    } catch (const std::exception&) {
        throw ConfigError(std::string("TBOUND_ENUM_CAP: expected a positive integer, got '") + env +
                          "'");
    }
}

int run_activation(const ActivationOpts& o)
{
    require_order(o.s_max, "--s-max");
    if (!(o.lo < o.hi))
        throw ConfigError("--lo/--hi: the interval must be nonempty");
    std::vector<ActivationKind> kinds;
    for (const auto& k : o.kinds)
        kinds.push_back(parse_or_config<ActivationKind>([&] { return activation_from_string(k); },
                                                        "--kind"));
    Table t;
    t.header.push_back("order");
    for (auto k : kinds)
        t.header.push_back(to_string(k));
    std::vector<ActivationBoundTable> cols;
    for (auto k : kinds)
        cols.push_back(activation_table(k, o.s_max, {o.lo, o.hi}));
    for (int s = 1; s <= o.s_max; ++s) {
        std::vector<std::string> row{std::to_string(s)};
        for (const auto& c : cols) {
            double v = c.bounds.at(s);
            row.push_back(o.raw ? fmt_real(v, 10) : format_table_value(LogMag::from_value(v)));
        }
        t.rows.push_back(row);
    }
    Metadata meta;
    meta.extra = {{"domain", "[" + fmt_real(o.lo) + ";" + fmt_real(o.hi) + "]"}};
    write_table(t, meta, o.out);
    return exit_ok;
}

int run_block_bounds(const BlockOpts& o)
{
    require_order(o.max_order, "--max-order");
    LoadedConfig cfg = read_config(o.config);
    ArchSpec spec = arch_from_json(cfg.doc);
    FactorMode mode = parse_mode(o.mode);
    Variant variant = parse_variant(o.variant);
    const int n = o.max_order;

    Table t;
    t.header = {"order", "type", "bound", "log10"};
    if (o.block == "softmax" && variant == Variant::level) {
        for (int s = 1; s <= n; ++s) {
            auto c = bound_cells(softmax_bound(s));
            t.rows.push_back({std::to_string(s), "level", c[0], c[1]});
        }
    } else if (o.block == "softmax") {
        TypeTable tab = softmax_type_table(spec.M, n);
        for (const auto& [key, v] : tab.entries) {
            auto c = bound_cells(v);
            t.rows.push_back({std::to_string(total(key)), key_string(key), c[0], c[1]});
        }
    } else {
        Component comp = parse_or_config<Component>([&] { return component_from_string(o.block); },
                                                    "--block");
        if (variant == Variant::level) {
            BoundTable tab = component_level_table(comp, spec, n, mode);
            for (int s = 1; s <= n; ++s) {
                auto c = bound_cells(tab.at(s));
                t.rows.push_back({std::to_string(s), "level", c[0], c[1]});
            }
        } else {
            TypeTable tab = component_type_table(comp, spec, n);
            std::vector<std::pair<MultiIndex, LogMag>> rows(tab.entries.begin(), tab.entries.end());
            std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                return total(a.first) < total(b.first);
            });
            for (const auto& [key, v] : rows) {
                auto c = bound_cells(v);
                t.rows.push_back({std::to_string(total(key)), key_string(key), c[0], c[1]});
            }
        }
    }
    Metadata meta{cfg.hash, to_string(mode), to_string(variant), {{"block", o.block}}};
    write_table(t, meta, o.out);
    return exit_ok;
}

int run_transformer_bounds(const TransformerOpts& o)
{
    require_order(o.max_order, "--max-order");
    LoadedConfig cfg = read_config(o.config);
    TransformerSpec spec = transformer_from_json(cfg.doc);
    FactorMode mode = parse_mode(o.mode);
    Variant variant = parse_variant(o.variant);
    TransformerResult res = transformer_bounds(spec, variant, o.max_order, mode);
    Table t;
    t.header = {"order", "bound", "log10"};
    for (int s = 1; s <= o.max_order; ++s) {
        auto c = bound_cells(res.table.at(s));
        t.rows.push_back({std::to_string(s), c[0], c[1]});
    }
    Metadata meta{cfg.hash, to_string(mode), to_string(variant), {}};
    meta.extra.push_back({"depth", std::to_string(spec.blocks.size())});
    if (res.fell_back_to_level) {
        meta.extra.push_back({"warning", "type_recursion_above_cap_fell_back_to_level"});
        std::cerr << "warning: order " << o.max_order << " exceeds the enumeration cap "
                  << enumeration_cap() << "; level recursion used\n";
    }
    write_table(t, meta, o.out);
    return exit_ok;
}

namespace {

std::map<int, LogMag> read_constants(const std::string& arg, int s0)
{
    std::map<int, LogMag> out;
    auto number = [](const std::string& s, const std::string& what) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size() || !(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(what + ": expected a finite nonnegative number, got '" + s + "'");
        }
    };
    if (arg.empty())
        throw ConfigError("--constants: required");
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#' || line.rfind("s,", 0) == 0)
                continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ConfigError(arg + ":" + std::to_string(lineno) + ": expected 's,C'");
            const std::string where = arg + ":" + std::to_string(lineno);
            int s = static_cast<int>(number(line.substr(0, comma), where));
            out[s] = LogMag::from_value(number(line.substr(comma + 1), where));
        }
    } else {
        std::stringstream ss(arg);
        std::string item;
        int s = s0;
        while (std::getline(ss, item, ','))
            out[s++] = LogMag::from_value(number(item, "--constants"));
    }
    return out;
}

GenBoundInput genbound_input(const std::string& config, double kappa, double delta, int md,
                             const std::string& constants, int s0, std::string& hash)
{
    GenBoundInput in;
    if (!config.empty()) {
        LoadedConfig cfg = read_config(config);
        hash = cfg.hash;
        return genbound_from_json(cfg.doc);
    }
    in.kappa = kappa;
    in.delta = delta;
    in.Md = md;
    in.constants = read_constants(constants, s0);
    hash = fnv1a64_hex(constants);
    try {
        in.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return in;
}

} // namespace

int run_genbound(const GenboundOpts& o)
{
    std::string hash;
    GenBoundInput in = genbound_input(o.config, o.kappa, o.delta, o.md, o.constants, o.s0, hash);
    if (o.t)
        in.t = o.t;
    if (o.n_min < 1 || o.n_max < o.n_min || o.per_decade < 1)
        throw ConfigError("--n-min/--n-max/--per-decade: need 1 <= n-min <= n-max, per-decade >= 1");
    if (!((1.0 - in.kappa) * static_cast<double>(o.n_min) > 1.0))
        throw ConfigError("--n-min: (1 - kappa) N must exceed 1");
    if (in.t && *in.t < o.n_max)
        throw ConfigError("--t: the horizon must be at least n-max");
    const int s_max = o.s_max < 0 ? in.constants.rbegin()->first : o.s_max;

    std::vector<std::int64_t> Ns;
    const double a = std::log10(static_cast<double>(o.n_min));
    const double b = std::log10(static_cast<double>(o.n_max));
    const int steps = static_cast<int>(std::ceil((b - a) * o.per_decade));
    for (int j = 0; j <= steps; ++j) {
        double x = steps == 0 ? a : a + (b - a) * j / steps;
        auto N = static_cast<std::int64_t>(std::llround(std::pow(10.0, x)));
        N = std::clamp(N, o.n_min, o.n_max);
        if (Ns.empty() || N > Ns.back())
            Ns.push_back(N);
    }
    Table t;
    t.header = {"N", "s_best", "time_term", "rate_term", "hprob_term", "bound"};
    for (const auto& r : envelope(in, Ns, s_max))
        t.rows.push_back({std::to_string(r.N), std::to_string(r.best_s), fmt_real(r.terms.time, 10),
                          fmt_real(r.terms.complexity, 10), fmt_real(r.terms.hprob, 10),
                          fmt_real(r.bound.value(), 10)});
    Metadata meta{hash, "none", "none", {}};
    meta.extra = {{"kappa", fmt_real(in.kappa)}, {"delta", fmt_real(in.delta)},
                  {"Md", std::to_string(in.Md)},
                  {"t", in.t ? std::to_string(*in.t) : std::string("inf")}};
    write_table(t, meta, o.out);
    return exit_ok;
}

int run_transitions(const TransitionsOpts& o)
{
    std::string hash;
    GenBoundInput in = genbound_input(o.config, o.kappa, o.delta, o.md, o.constants, o.s0, hash);
    require_order(o.s_max, "--s-max");
    if (o.n_cap < 2)
        throw ConfigError("--n-cap: must be at least 2");
    auto tau = transition_times(in, o.s_max, o.n_cap);
    Table t;
    t.header = {"s", "tau"};
    for (std::size_t s = 0; s < tau.size(); ++s)
        t.rows.push_back({std::to_string(s),
                          tau[s] == kTauUnreached ? std::string("unreached") : std::to_string(tau[s])});
    Metadata meta{hash, "none", "none", {}};
    meta.extra = {{"kappa", fmt_real(in.kappa)}, {"delta", fmt_real(in.delta)},
                  {"Md", std::to_string(in.Md)}, {"n_cap", std::to_string(o.n_cap)}};
    write_table(t, meta, o.out);
    return exit_ok;
}

int run_verify(const VerifyOpts& o)
{
    LoadedConfig cfg = read_config(o.config);
    ArchSpec spec = arch_from_json(cfg.doc);
    Component comp = parse_or_config<Component>([&] { return component_from_string(o.component); },
                                                "--component");
    if (o.order < 1 || o.order > 3)
        throw ConfigError("--order: must lie in 1..3");
    if (o.trials < 1 || o.grid < 1)
        throw ConfigError("--trials/--grid: must be at least 1");
    if (o.fd_step != 0.0 && !(o.fd_step >= 1e-5 && o.fd_step <= 1e-1))
        throw ConfigError("--fd-step: must lie in [1e-5, 1e-1]");
    if (!(spec.radius > 0.0))
        throw ConfigError("radius: must be positive for verification");

    SoundnessReport rep = soundness_check(comp, spec, o.order, o.trials, o.seed, o.grid, o.fd_step);
    json entries = json::array();
    for (const auto& e : rep.entries) {
        const double tb = e.type_bound.value();
        entries.push_back({{"trial", e.trial},
                           {"type", e.alpha},
                           {"empirical", e.empirical},
                           {"type_bound", tb},
                           {"level_bound", e.level_bound.value()},
                           {"margin", tb - e.empirical},
                           {"violated", e.violated}});
    }
    json doc{{"tool_version", TBOUND_VERSION},
             {"config_hash", cfg.hash},
             {"component", to_string(comp)},
             {"order", o.order},
             {"trials", o.trials},
             {"seed", o.seed},
             {"grid", o.grid},
             {"fd_step", o.fd_step},
             {"violations", rep.violations},
             {"entries", entries}};
    const std::string text = doc.dump(1) + "\n";
    if (o.out == "-") {
        std::cout << text;
    } else {
        std::ofstream out(o.out, std::ios::binary);
        if (!(out << text))
            throw std::runtime_error(o.out + ": cannot write report");
    }
    std::cerr << to_string(comp) << ": " << rep.entries.size() << " checks, " << rep.violations
              << " violations\n";
    return rep.violations ? exit_violation : exit_ok;
}

namespace {

void push_series(Table& t, const std::string& series, double x, LogMag y)
{
    t.rows.push_back({series, fmt_real(x, 10), fmt_log10(y)});
}

} // namespace

int run_figure(const FigureOpts& o)
{
    const FactorMode mode = FactorMode::exact_touchard;
    Table t;
    t.header = {"series", "x", "y_log10"};
    if (o.which == "activation_curves") {
        for (auto k : {ActivationKind::softplus, ActivationKind::gelu, ActivationKind::tanh,
                       ActivationKind::swish})
            for (const auto& [s, v] : activation_table(k, 10).bounds)
                push_series(t, to_string(k), s, LogMag::from_value(v));
    } else if (o.which == "block_comparison") {
        const int n = 5;
        auto mh = multihead_level_table(presets::multihead_base(), n, mode);
        ArchSpec p = presets::perceptron_base();
        auto ff = feedforward_level_table(p, p.radius, n, mode);
        ArchSpec l = presets::layernorm_base();
        auto ln = layernorm_level_table({l.i, l.radius, l.gamma, l.w}, n, mode);
        for (int s = 1; s <= n; ++s) {
            push_series(t, "multihead", s, mh.at(s));
            push_series(t, "perceptron", s, ff.at(s));
            push_series(t, "layernorm", s, ln.at(s));
        }
    } else if (o.which == "type_vs_level") {
        const int n = 5;
        ArchSpec b = presets::block_base();
        auto ty = tblock_type_table(b, n);
        auto lv = tblock_level_table(b, n, mode);
        for (int s = 1; s <= n; ++s) {
            push_series(t, "type", s, ty.level(s));
            push_series(t, "level", s, lv.at(s));
        }
    } else if (o.which == "transition_vs_dim") {
        const int s_max = 6;
        for (int d = 2; d <= 20; ++d) {
            GenBoundInput in = presets::genbound_base(d, s_max);
            auto tau = transition_times(in, s_max);
            for (int s = 1; s <= s_max; ++s)
                if (tau[s] != kTauUnreached)
                    push_series(t, "tau_" + std::to_string(s), d,
                                LogMag::from_value(static_cast<double>(tau[s])));
        }
    } else if (o.which == "architecture_sweep") {
        const int n = 5;
        for (int i : {5, 10, 20}) {
            ArchSpec b = presets::block_base();
            b.i = b.o = i;
            auto ty = tblock_type_table(b, n);
            for (int s = 1; s <= n; ++s)
                push_series(t, "block_i" + std::to_string(i), s, ty.level(s));
        }
        for (int M : {1, 5, 20}) {
            ArchSpec m = presets::multihead_base();
            m.M = M;
            auto lv = multihead_level_table(m, n, mode);
            for (int s = 1; s <= n; ++s)
                push_series(t, "multihead_M" + std::to_string(M), s, lv.at(s));
        }
    } else {
        throw ConfigError("--which: unknown figure '" + o.which + "'");
    }
    Metadata meta{"preset", to_string(mode), "none", {{"figure", o.which}}};
    write_table(t, meta, o.out);
    return exit_ok;
}

} // namespace tbound::cli
