#include "tbound/compose.hpp"

#include <map>
#include <mutex>

namespace tbound {

LogMag compose_level(const BoundTable& outer, const BoundTable& inner, int m, int n,
                     FactorMode mode)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("compose_level: n and m must be positive");
    LogMag in = inner.cumulative ? inner.at(n) : inner.upto(n);
    LogMag best;
    for (int np = 1; np <= n; ++np)
        best = max(best, outer.at(np) * in.pow(np));
    return best * fdb_coeff(n, m, mode);
}

BoundTable compose_level_table(const BoundTable& outer, const BoundTable& inner, int m,
                               int n_max, FactorMode mode)
{
    BoundTable t;
    t.mode = mode;
    t.variant = Variant::level;
    for (int n = 1; n <= n_max; ++n)
        t.entries[n] = compose_level(outer, inner, m, n, mode);
    return t;
}

LogMag compose_level_bell(const BoundTable& outer, const BoundTable& inner, int m, int n)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("compose_level_bell: n and m must be positive");
    // B[a][q]: set partitions of a slots into q blocks weighted by inner(|block|)
    std::vector<std::vector<LogMag>> B(n + 1, std::vector<LogMag>(n + 1));
    B[0][0] = LogMag::one();
    for (int a = 1; a <= n; ++a)
        for (int q = 1; q <= a; ++q) {
            LogMag s;
            for (int j = 1; j <= a - q + 1; ++j)
                s += to_logmag(binomial(a - 1, j - 1)) * inner.at(j) * B[a - j][q - 1];
            B[a][q] = s;
        }
    LogMag r;
    const LogMag mm = LogMag::from_value(m);
    for (int q = 1; q <= n; ++q)
        r += outer.at(q) * mm.pow(q) * B[n][q];
    return r;
}

BoundTable chain_level_table(const BoundTable& outer, const BoundTable& inner, int m, int n_max,
                             FactorMode mode)
{
    if (mode == FactorMode::asymptotic)
        return compose_level_table(outer, inner, m, n_max, mode);
    BoundTable t;
    t.mode = mode;
    t.variant = Variant::level;
    for (int n = 1; n <= n_max; ++n)
        t.entries[n] = compose_level_bell(outer, inner, m, n);
    return t;
}

std::vector<MultiIndex> type_keys(int dim, int n_max)
{
    std::vector<MultiIndex> out;
    for (int n = 1; n <= n_max; ++n)
        for (auto& p : partitions(n, dim))
            out.push_back(std::move(p));
    return out;
}

namespace {

const std::vector<std::vector<ZetaBlock>>& cached_blocks(const MultiIndex& key)
{
    static std::mutex mu;
    static std::map<MultiIndex, std::vector<std::vector<ZetaBlock>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, enum_zeta_blocks(key)).first;
    return it->second;
}

// sum over beta of order np (at most m parts) of N_m(beta) outer(beta) np!/beta!
LogMag outer_mass(const TypeTable& outer, int np)
{
    LogMag s;
    BigInt npf = factorial(np);
    for (const auto& beta : partitions(np, outer.dim)) {
        LogMag f = outer.at(beta);
        if (f.is_zero())
            continue;
        BigInt c = count_equivalent(beta, outer.dim);
        s += f * to_logmag(Rational(c * npf, factorial(beta)));
    }
    return s;
}

} // namespace

LogMag compose_type(const TypeTable& outer, const TypeTable& inner, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    const int n = total(key);
    if (n < 1)
        throw std::invalid_argument("compose_type: |alpha| must be positive");
    if (static_cast<int>(key.size()) > inner.dim)
        throw std::invalid_argument("compose_type: alpha has more parts than inner inputs");
    check_enumeration_cap(n);

    // A[n'] = sum over block sets with sum c = n' of prod inner^c / (c! zeta!^c)
    std::vector<LogMag> A(n + 1);
    for (const auto& blocks : cached_blocks(key)) {
        int np = 0;
        LogMag term = LogMag::one();
        for (const auto& b : blocks) {
            np += b.count;
            LogMag g = inner.at(type_key(b.zeta));
            BigInt den = factorial(b.count);
            BigInt zf = factorial(b.zeta);
            for (int q = 0; q < b.count; ++q)
                den *= zf;
            term *= g.pow(b.count) / to_logmag(den);
            if (term.is_zero())
                break;
        }
        A[np] += term;
    }
    LogMag total_sum;
    for (int np = 1; np <= n; ++np) {
        if (A[np].is_zero())
            continue;
        total_sum += outer_mass(outer, np) * A[np];
    }
    return to_logmag(factorial(key)) * total_sum;
}

TypeTable compose_type_table(const TypeTable& outer, const TypeTable& inner, int n_max)
{
    TypeTable t;
    t.dim = inner.dim;
    for (const auto& key : type_keys(inner.dim, n_max))
        t.entries[key] = compose_type(outer, inner, key);
    return t;
}

} // namespace tbound
