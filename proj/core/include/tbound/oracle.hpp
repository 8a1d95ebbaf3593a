#pragma once

#include "tbound/arch.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace tbound {

enum class Component { dotp, attention, multihead, layernorm, feedforward, block };

std::string to_string(Component c);
Component component_from_string(const std::string& s);

using Vec = std::vector<double>;
// Row-major rows x cols.
struct Matrix {
    int rows = 0, cols = 0;
    Vec a;
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Deterministic uniform draws: the top 53 bits of mt19937_64.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double cap) { return cap * (2.0 * unit() - 1.0); }
    Matrix matrix(int rows, int cols, double cap);
    Vec vector(int n, double cap);

private:
    std::mt19937_64 rng_;
};

// A sampled instance of one component with every entry inside the spec's caps.
// Inputs are the M*i sequence entries, row-major (layer norm and feedforward take one row of i).
class ConcreteNetwork {
public:
    ConcreteNetwork(Component component, const ArchSpec& spec, std::uint64_t seed);

    Vec evaluate(const Vec& x) const;
    int input_dim() const;
    Component component() const { return component_; }
    const ArchSpec& spec() const { return spec_; }

private:
    struct Head {
        Matrix Q, K, V;
    };
    struct Norm {
        double gamma = 0.0;
        Vec beta;
    };

    Vec scores(const Head& h, const Vec& x, int m) const;
    Vec attention(const Head& h, const Vec& x) const; // M x value width
    Vec multihead(const Vec& x) const;                // M x i
    Vec layernorm(const Norm& n, const Vec& u) const;
    Vec perceptron(const Vec& u) const; // one row of i -> o

    Component component_;
    ArchSpec spec_;
    std::vector<Head> heads_;
    Matrix W_;
    Matrix A_, B1_, B2_;
    Vec a_;
    Norm ln1_, ln2_;
};

// Nested central differences, one nesting per unit of |alpha|, then one Richardson pass.
Vec numeric_partial(const std::function<Vec(const Vec&)>& f, const Vec& x, const MultiIndex& alpha,
                    double h);

// Step used for a given order: 1e-3 for first derivatives, 1e-2 above.
double default_step(int order);

// Deterministic low-discrepancy points in [-r, r]^dim (Halton with a seeded shift).
std::vector<Vec> sample_points(int dim, double r, int count, std::uint64_t seed);

struct EmpiricalEstimate {
    MultiIndex alpha; // type key
    double value = 0.0;
    double step = 0.0;
    int sample_points = 0;
};

// Max over points, output coordinates and all gamma of each type with 1 <= |gamma| <= n.
// fd_step <= 0 selects default_step per order.
std::vector<EmpiricalEstimate> empirical_cs(const ConcreteNetwork& net, double radius, int n,
                                            int grid, std::uint64_t seed, double fd_step = 0.0);

struct SoundnessEntry {
    int trial = 0;
    MultiIndex alpha;
    double empirical = 0.0;
    LogMag type_bound;
    LogMag level_bound;
    bool violated = false;
};

struct SoundnessReport {
    Component component;
    int trials = 0;
    int n_max = 0;
    std::vector<SoundnessEntry> entries;
    int violations = 0;
};

// empirical > bound (1 + 1e-6) + 1e-7 counts as a violation
bool exceeds(double empirical, LogMag bound);

// Analytic type and level tables for a component, as used by the checks.
TypeTable component_type_table(Component c, const ArchSpec& spec, int n_max);
BoundTable component_level_table(Component c, const ArchSpec& spec, int n_max, FactorMode mode);

SoundnessReport soundness_check(Component c, const ArchSpec& spec, int n_max, int trials,
                                std::uint64_t seed, int grid = 64, double fd_step = 0.0);

} // namespace tbound
