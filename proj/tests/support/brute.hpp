#pragma once

// Brute-force references shared by the unit tests.

#include "tbound/combinatorics.hpp"
#include "tbound/multiindex.hpp"

#include <functional>
#include <map>
#include <random>
#include <vector>

namespace brute {

using tbound::BigInt;
using tbound::MultiIndex;
using tbound::Rational;

// Visit every set partition of {0..n-1} as a restricted growth string; blocks = max label + 1.
inline void set_partitions(int n, const std::function<void(const std::vector<int>&, int)>& visit)
{
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
        if (pos == n) {
            visit(a, blocks);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            a[pos] = b;
            rec(pos + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0)
        visit(a, 0);
    else
        rec(0, 0);
}

// All vectors in N^k with entries <= bound.
inline std::vector<MultiIndex> box(int k, int bound)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(k, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            cur[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

// Sparse multivariate polynomial with rational coefficients.
struct Poly {
    int vars = 1;
    std::map<MultiIndex, Rational> c;

    static Poly constant(int vars, Rational v)
    {
        Poly p{vars, {}};
        if (v != 0)
            p.c[MultiIndex(vars, 0)] = v;
        return p;
    }

    Poly operator+(const Poly& o) const
    {
        Poly r = *this;
        for (const auto& [e, v] : o.c) {
            r.c[e] += v;
            if (r.c[e] == 0)
                r.c.erase(e);
        }
        return r;
    }

    Poly operator*(const Poly& o) const
    {
        Poly r{vars, {}};
        for (const auto& [e1, v1] : c)
            for (const auto& [e2, v2] : o.c) {
                MultiIndex e(vars);
                for (int j = 0; j < vars; ++j)
                    e[j] = e1[j] + e2[j];
                r.c[e] += v1 * v2;
            }
        for (auto it = r.c.begin(); it != r.c.end();)
            it = it->second == 0 ? r.c.erase(it) : std::next(it);
        return r;
    }

    Poly derivative(const MultiIndex& alpha) const
    {
        Poly r{vars, {}};
        for (const auto& [e, v] : c) {
            MultiIndex ne = e;
            Rational w = v;
            bool zero = false;
            for (int j = 0; j < vars && !zero; ++j) {
                if (e[j] < alpha[j]) {
                    zero = true;
                    break;
                }
                for (int q = 0; q < alpha[j]; ++q)
                    w *= e[j] - q;
                ne[j] = e[j] - alpha[j];
            }
            if (!zero && w != 0)
                r.c[ne] += w;
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& x) const
    {
        Rational s = 0;
        for (const auto& [e, v] : c) {
            Rational t = v;
            for (int j = 0; j < vars; ++j)
                for (int q = 0; q < e[j]; ++q)
                    t *= x[j];
            s += t;
        }
        return s;
    }
};

// f(g_1, ..., g_m) by expansion.
inline Poly compose(const Poly& f, const std::vector<Poly>& g)
{
    const int k = g.front().vars;
    Poly r{k, {}};
    for (const auto& [e, v] : f.c) {
        Poly term = Poly::constant(k, v);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (int q = 0; q < e[i]; ++q)
                term = term * g[i];
        r = r + term;
    }
    return r;
}

inline Poly random_poly(std::mt19937_64& rng, int vars, int degree)
{
    Poly p{vars, {}};
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& e : box(vars, degree)) {
        if (tbound::total(e) > degree)
            continue;
        int v = coef(rng);
        if (v != 0)
            p.c[e] = v;
    }
    return p;
}

// D^alpha (f o g)(x) from the partition sum.
inline Rational fdb_sum(const Poly& f, const std::vector<Poly>& g, const MultiIndex& alpha,
                        const std::vector<Rational>& x)
{
    const int m = static_cast<int>(g.size());
    std::vector<Rational> gx;
    for (const auto& gi : g)
        gx.push_back(gi.eval(x));
    Rational total_sum = 0;
    for (const auto& beta : box(m, tbound::total(alpha))) {
        int nb = tbound::total(beta);
        if (nb < 1 || nb > tbound::total(alpha))
            continue;
        Rational fb = f.derivative(beta).eval(gx);
        if (fb == 0)
            continue;
        for (const auto& t : tbound::enum_partitions(alpha, beta, tbound::PartitionVariant::standard)) {
            Rational prod = tbound::fdb_weight(t, alpha);
            for (std::size_t j = 0; j < t.eta.size(); ++j)
                for (int i = 0; i < m; ++i)
                    for (int q = 0; q < t.eta[j][i]; ++q)
                        prod *= g[i].derivative(t.zeta[j]).eval(x);
            total_sum += fb * prod;
        }
    }
    return total_sum;
}

} // namespace brute
