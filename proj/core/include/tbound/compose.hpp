#pragma once

#include "tbound/arch.hpp"

namespace tbound {

// Level form of the chain rule bound:
// max_{1<=n'<=n} outer(n') * inner(<=n)^{n'} * fdb_coeff(n, m, mode).
// m is the number of inner output coordinates feeding the outer function.
LogMag compose_level(const BoundTable& outer, const BoundTable& inner, int m, int n,
                     FactorMode mode);

// Exact per-order chain rule: sum_{n'} outer(n') m^{n'} B_{n,n'}(inner(1), inner(2), ...),
// with B the partial Bell polynomial over set partitions. Never above compose_level.
LogMag compose_level_bell(const BoundTable& outer, const BoundTable& inner, int m, int n);

// Per-order table of compose_level for n = 1..n_max.
BoundTable compose_level_table(const BoundTable& outer, const BoundTable& inner, int m,
                               int n_max, FactorMode mode);
// Bell form in exact mode, max form in asymptotic mode.
BoundTable chain_level_table(const BoundTable& outer, const BoundTable& inner, int m, int n_max,
                             FactorMode mode);

// Type form: alpha! sum_beta N(beta) outer(beta) sum_P prod inner(o(zeta))^{|eta|} / (eta! zeta!^{|eta|}).
// outer.dim is m; alpha is a type over inner.dim inputs.
LogMag compose_type(const TypeTable& outer, const TypeTable& inner, const MultiIndex& alpha);

// Table over every type of order 1..n_max with at most inner.dim parts.
TypeTable compose_type_table(const TypeTable& outer, const TypeTable& inner, int n_max);

// Keys of every type with order 1..n_max and at most dim parts.
std::vector<MultiIndex> type_keys(int dim, int n_max);

// Table whose entry depends only on the order: f(|key|).
template <class F>
TypeTable order_type_table(int dim, int n_max, F f)
{
    TypeTable t;
    t.dim = dim;
    for (const auto& key : type_keys(dim, n_max))
        t.entries[key] = f(total(key));
    return t;
}

} // namespace tbound
