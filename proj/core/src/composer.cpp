#include "tbound/composer.hpp"

#include <cmath>

namespace tbound {

namespace {

LogMag val(double x) { return LogMag::from_value(x); }

LayerNormParams ln(const ArchSpec& spec, int width, double radius)
{
    return {width, radius, spec.gamma, spec.w};
}

BoundTable level_of(const TypeTable& t, int n_max, FactorMode mode)
{
    BoundTable out;
    out.mode = mode;
    out.variant = Variant::type;
    for (int n = 1; n <= n_max; ++n)
        out.entries[n] = t.level(n);
    return out;
}

// Read-out x -> A x + b on `dim` inputs: only first derivatives survive.
BoundTable affine_level(double cap, int n_max, FactorMode mode)
{
    BoundTable t;
    t.mode = mode;
    for (int n = 1; n <= n_max; ++n)
        t.entries[n] = n == 1 ? val(cap) : LogMag::zero();
    return t;
}

} // namespace

BlockRadii block_radii(const ArchSpec& spec)
{
    BlockRadii r;
    r.input = spec.radius;
    r.after_attn = spec.radius *
                   (1.0 + static_cast<double>(spec.v) * spec.C_W * spec.C_V * spec.i * spec.M);
    r.after_ln1 = spec.gamma * 2.0 * r.after_attn + spec.beta;
    double act_sup = maximize_abs(
        [&](double x) { return activation_value(spec.activation, x); },
        perceptron_domain(spec, r.after_ln1));
    r.after_mlp = spec.i * spec.C_B1 * r.after_ln1 + spec.l * spec.C_B2 * act_sup;
    r.output = spec.gamma * 2.0 * r.after_mlp + spec.beta;
    return r;
}

BoundTable tblock_level_table(const ArchSpec& spec, int n_max, FactorMode mode)
{
    const BlockRadii r = block_radii(spec);
    BoundTable mh = multihead_level_table(spec, n_max, mode);
    mh.entries[1] += LogMag::one(); // skip connection
    BoundTable c2 = chain_level_table(layernorm_level_table(ln(spec, spec.i, r.after_attn),
                                                              n_max, mode),
                                        mh, spec.i, n_max, mode);
    BoundTable c3 = chain_level_table(feedforward_level_table(spec, r.after_ln1, n_max, mode),
                                        c2, spec.i, n_max, mode);
    return chain_level_table(layernorm_level_table(ln(spec, spec.o, r.after_mlp), n_max, mode),
                               c3, spec.o, n_max, mode);
}

TypeTable tblock_type_table(const ArchSpec& spec, int n_max)
{
    check_enumeration_cap(n_max);
    const BlockRadii r = block_radii(spec);
    TypeTable c1 = multihead_type_table(spec, n_max);
    c1.entries[{1}] += LogMag::one();
    TypeTable c2 = compose_type_table(layernorm_type_table(ln(spec, spec.i, r.after_attn), n_max),
                                      c1, n_max);
    TypeTable c3 = compose_type_table(feedforward_type_table(spec, r.after_ln1, n_max), c2, n_max);
    return compose_type_table(layernorm_type_table(ln(spec, spec.o, r.after_mlp), n_max), c3,
                              n_max);
}

LogMag tblock_bound_level(const ArchSpec& spec, int n, FactorMode mode)
{
    return tblock_level_table(spec, n, mode).at(n);
}

LogMag tblock_bound_type(const ArchSpec& spec, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    return tblock_type_table(spec, total(key)).at(key);
}

namespace {

// Blocks with their input radii chained through the stack.
std::vector<ArchSpec> chained_blocks(const TransformerSpec& spec)
{
    std::vector<ArchSpec> out = spec.blocks;
    for (std::size_t b = 1; b < out.size(); ++b)
        out[b].radius = block_radii(out[b - 1]).output;
    return out;
}

TypeTable transformer_type_table(const TransformerSpec& spec, int n_max)
{
    auto blocks = chained_blocks(spec);
    TypeTable acc = tblock_type_table(blocks[0], n_max);
    for (std::size_t b = 1; b < blocks.size(); ++b)
        acc = compose_type_table(tblock_type_table(blocks[b], n_max), acc, n_max);
    const ArchSpec& last = blocks.back();
    TypeTable read = order_type_table(last.M * last.o, n_max, [&](int n) {
        return n == 1 ? val(spec.final_A_bound) : LogMag::zero();
    });
    return compose_type_table(read, acc, n_max);
}

BoundTable transformer_level_table(const TransformerSpec& spec, int n_max, FactorMode mode)
{
    auto blocks = chained_blocks(spec);
    BoundTable acc = tblock_level_table(blocks[0], n_max, mode);
    for (std::size_t b = 1; b < blocks.size(); ++b)
        acc = chain_level_table(tblock_level_table(blocks[b], n_max, mode), acc,
                                  blocks[b].M * blocks[b].i, n_max, mode);
    const ArchSpec& last = blocks.back();
    return chain_level_table(affine_level(spec.final_A_bound, n_max, mode), acc,
                               last.M * last.o, n_max, mode);
}

} // namespace

TransformerResult transformer_bounds(const TransformerSpec& spec, Variant variant, int n_max,
                                     FactorMode mode)
{
    spec.validate();
    TransformerResult res;
    if (variant == Variant::type && n_max <= enumeration_cap()) {
        res.table = level_of(transformer_type_table(spec, n_max), n_max, mode);
    } else {
        res.fell_back_to_level = variant == Variant::type;
        res.table = transformer_level_table(spec, n_max, mode);
    }
    return res;
}

LogMag transformer_bound(const TransformerSpec& spec, const MultiIndex& alpha, FactorMode mode)
{
    (void)mode;
    spec.validate();
    MultiIndex key = type_key(alpha);
    return transformer_type_table(spec, total(key)).at(key);
}

LogMag GrowthClass::at(int s) const
{
    switch (kind) {
    case Kind::poly:
        return val(C) * LogMag::from_value(s).pow(r);
    case Kind::exp:
        return val(C) * LogMag::from_log10(s * r / std::log(10.0));
    case Kind::none:
        break;
    }
    return val(C);
}

std::string to_string(GrowthClass::Kind kind)
{
    switch (kind) {
    case GrowthClass::Kind::poly:
        return "poly";
    case GrowthClass::Kind::exp:
        return "exp";
    case GrowthClass::Kind::none:
        break;
    }
    return "none";
}

GrowthClass::Kind growth_kind_from_string(const std::string& s)
{
    if (s == "poly")
        return GrowthClass::Kind::poly;
    if (s == "exp")
        return GrowthClass::Kind::exp;
    if (s == "none")
        return GrowthClass::Kind::none;
    throw std::invalid_argument("unknown growth class: " + s);
}

LogMag loss_constant(const BoundTable& transformer_table, const GrowthClass& target,
                     const GrowthClass& loss, int D, int s, FactorMode mode)
{
    if (s < 1 || D < 1)
        throw std::invalid_argument("loss_constant: s and D must be positive");
    LogMag c2 = transformer_table.cumulative ? transformer_table.at(s) : transformer_table.upto(s);
    return loss.at(s) * (target.at(s) * c2).pow(s) * fdb_coeff(s, 2 * D, mode);
}

} // namespace tbound
