#pragma once

#include "tbound/compose.hpp"
#include "tbound/primitives.hpp"

namespace tbound {

// Sup-norm radii of the intermediate domains of one block.
struct BlockRadii {
    double input = 0.0;      // ||K||
    double after_attn = 0.0; // x + MH(x)
    double after_ln1 = 0.0;
    double after_mlp = 0.0;
    double output = 0.0; // after the second layer norm
};

BlockRadii block_radii(const ArchSpec& spec);

// Per-order level bounds of a block on the spec's own radius.
BoundTable tblock_level_table(const ArchSpec& spec, int n_max, FactorMode mode);
// Per-type bounds over the M*i block inputs.
TypeTable tblock_type_table(const ArchSpec& spec, int n_max);

LogMag tblock_bound_level(const ArchSpec& spec, int n, FactorMode mode);
LogMag tblock_bound_type(const ArchSpec& spec, const MultiIndex& alpha);

struct TransformerResult {
    BoundTable table; // per order 1..n_max
    bool fell_back_to_level = false;
};

// Type recursion over the blocks followed by the final affine read-out.
// Above the enumeration cap the level recursion is used and the flag is raised.
TransformerResult transformer_bounds(const TransformerSpec& spec, Variant variant, int n_max,
                                     FactorMode mode);
LogMag transformer_bound(const TransformerSpec& spec, const MultiIndex& alpha, FactorMode mode);

struct GrowthClass {
    enum class Kind { poly, exp, none };
    Kind kind = Kind::none;
    double C = 1.0;
    double r = 0.0;

    // C s^r, C e^{s r}, or C
    LogMag at(int s) const;
};

std::string to_string(GrowthClass::Kind kind);
GrowthClass::Kind growth_kind_from_string(const std::string& s);

// C~_s (C_1 C_2)^s fdb_coeff(s, 2D, mode) with C~ from the loss class, C_1 from the target
// class and C_2 = transformer_table(<= s).
LogMag loss_constant(const BoundTable& transformer_table, const GrowthClass& target,
                     const GrowthClass& loss, int D, int s, FactorMode mode);

} // namespace tbound
