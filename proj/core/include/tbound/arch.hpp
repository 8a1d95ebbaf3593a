#pragma once

#include "tbound/activations.hpp"
#include "tbound/combinatorics.hpp"
#include "tbound/log_magnitude.hpp"
#include "tbound/multiindex.hpp"

#include <map>
#include <string>
#include <vector>

namespace tbound {

// One transformer block (or any of its parts). Caps bound absolute entry values;
// radius bounds every input coordinate (sup-norm ball).
struct ArchSpec {
    int M = 1; // sequence length
    int i = 1; // input width
    int k = 1; // key width
    int v = 1; // value width
    int l = 1; // perceptron latent width
    int o = 1; // output width
    int H = 1; // heads
    double C_K = 0.0, C_Q = 0.0, C_V = 0.0, C_W = 0.0;
    double C_A = 0.0, C_B1 = 0.0, C_B2 = 0.0;
    double gamma = 1.0; // layer-norm scale
    double w = 1.0;     // layer-norm strength in [0, 1]
    ActivationKind activation = ActivationKind::sigmoid;
    double radius = 1.0; // domain radius ||K||
    double C_a = 0.0;    // perceptron bias cap
    double beta = 0.0;   // layer-norm shift cap

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct TransformerSpec {
    std::vector<ArchSpec> blocks;
    double final_A_bound = 1.0;
    double final_b_bound = 0.0;
    int out_dim = 1;

    void validate() const;
};

enum class Variant { type, level };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Order s -> bound.
struct BoundTable {
    std::map<int, LogMag> entries;
    FactorMode mode = FactorMode::exact_touchard;
    Variant variant = Variant::level;
    bool cumulative = false;

    LogMag at(int s) const;
    // max over orders 1..n
    LogMag upto(int n) const;
    int max_order() const;
    BoundTable to_cumulative() const;
};

// Derivative type (nonzero parts, descending) -> bound, for functions of dim inputs.
// The empty key holds the sup of the function itself when known.
struct TypeTable {
    int dim = 1;
    std::map<MultiIndex, LogMag> entries;

    LogMag at(const MultiIndex& key) const;
    bool has(const MultiIndex& key) const { return entries.count(key) > 0; }
    // Largest bound among types of total order n.
    LogMag level(int n) const;
    int max_order() const;
};

} // namespace tbound
