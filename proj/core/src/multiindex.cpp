#include "tbound/multiindex.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace tbound {

int total(const MultiIndex& a)
{
    return std::accumulate(a.begin(), a.end(), 0);
}

BigInt factorial(const MultiIndex& a)
{
    BigInt r = 1;
    for (int x : a)
        r *= factorial(x);
    return r;
}

bool is_ordered(const MultiIndex& a)
{
    return std::is_sorted(a.begin(), a.end(), std::greater<int>());
}

MultiIndex order(const MultiIndex& a)
{
    MultiIndex r = a;
    std::sort(r.begin(), r.end(), std::greater<int>());
    return r;
}

MultiIndex type_key(const MultiIndex& a)
{
    MultiIndex r;
    for (int x : a)
        if (x != 0)
            r.push_back(x);
    std::sort(r.begin(), r.end(), std::greater<int>());
    return r;
}

MultiIndex pad(const MultiIndex& key, int k)
{
    if (static_cast<int>(key.size()) > k)
        throw std::invalid_argument("pad: more parts than dimensions");
    MultiIndex r = key;
    r.resize(k, 0);
    return r;
}

BigInt count_equivalent(const MultiIndex& alpha, int k)
{
    if (static_cast<int>(alpha.size()) > k)
        throw std::invalid_argument("count_equivalent: alpha longer than k");
    std::map<int, int> mult;
    for (int x : alpha)
        ++mult[x];
    mult[0] += k - static_cast<int>(alpha.size());
    BigInt r = factorial(k);
    for (auto [v, c] : mult)
        r /= factorial(c);
    return r;
}

namespace {

void partitions_rec(int n, int max_part, int max_parts, MultiIndex& cur,
                    std::vector<MultiIndex>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) == max_parts)
        return;
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, max_parts, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<MultiIndex> partitions(int n, int max_parts)
{
    std::vector<MultiIndex> out;
    if (n < 0)
        return out;
    MultiIndex cur;
    partitions_rec(n, n, max_parts, cur, out);
    return out;
}

std::vector<MultiIndex> enum_ordered(int k, int n, bool cumulative)
{
    if (k < 1)
        throw std::invalid_argument("enum_ordered: k must be positive");
    std::vector<MultiIndex> out;
    for (int t = cumulative ? 0 : n; t <= n; ++t)
        for (auto& p : partitions(t, k))
            out.push_back(pad(p, k));
    return out;
}

bool precedes(const MultiIndex& a, const MultiIndex& b)
{
    int ta = total(a), tb = total(b);
    if (ta != tb)
        return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

std::atomic<int> g_cap{8};

bool leq(const MultiIndex& a, const MultiIndex& b)
{
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j])
            return false;
    return true;
}

// Nonzero zeta <= alpha, sorted by precedes.
std::vector<MultiIndex> candidates(const MultiIndex& alpha)
{
    std::vector<MultiIndex> out;
    MultiIndex z(alpha.size(), 0);
    std::function<void(size_t)> rec = [&](size_t j) {
        if (j == alpha.size()) {
            if (total(z) > 0)
                out.push_back(z);
            return;
        }
        for (int v = 0; v <= alpha[j]; ++v) {
            z[j] = v;
            rec(j + 1);
        }
        z[j] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), precedes);
    return out;
}

void blocks_rec(const std::vector<MultiIndex>& cand, size_t start, MultiIndex& rest,
                std::vector<ZetaBlock>& cur, std::vector<std::vector<ZetaBlock>>& out)
{
    if (total(rest) == 0) {
        out.push_back(cur);
        return;
    }
    for (size_t idx = start; idx < cand.size(); ++idx) {
        const MultiIndex& z = cand[idx];
        if (!leq(z, rest))
            continue;
        MultiIndex r = rest;
        for (int c = 1;; ++c) {
            for (size_t j = 0; j < z.size(); ++j)
                r[j] -= z[j];
            cur.push_back({z, c});
            blocks_rec(cand, idx + 1, r, cur, out);
            cur.pop_back();
            if (!leq(z, r))
                break;
        }
    }
}

// All eta_j in N^m with |eta_j| = counts[j] and sum eta_j = beta.
void eta_rec(const std::vector<int>& counts, size_t j, MultiIndex& rest,
             std::vector<MultiIndex>& cur, std::vector<std::vector<MultiIndex>>& out)
{
    if (j == counts.size()) {
        if (total(rest) == 0)
            out.push_back(cur);
        return;
    }
    MultiIndex e(rest.size(), 0);
    std::function<void(size_t, int)> fill = [&](size_t d, int left) {
        if (d == rest.size()) {
            if (left != 0)
                return;
            for (size_t q = 0; q < rest.size(); ++q)
                rest[q] -= e[q];
            cur.push_back(e);
            eta_rec(counts, j + 1, rest, cur, out);
            cur.pop_back();
            for (size_t q = 0; q < rest.size(); ++q)
                rest[q] += e[q];
            return;
        }
        for (int v = std::min(left, rest[d]); v >= 0; --v) {
            e[d] = v;
            fill(d + 1, left - v);
        }
        e[d] = 0;
    };
    fill(0, counts[j]);
}

std::vector<int> flatten(const std::vector<MultiIndex>& seq)
{
    std::vector<int> r;
    for (const auto& a : seq)
        r.insert(r.end(), a.begin(), a.end());
    return r;
}

} // namespace

int enumeration_cap()
{
    return g_cap.load();
}

void set_enumeration_cap(int cap)
{
    if (cap < 1)
        throw std::invalid_argument("enumeration cap must be positive");
    g_cap.store(cap);
}

void check_enumeration_cap(int order)
{
    if (order > enumeration_cap())
        throw EnumerationCapExceeded("derivative order " + std::to_string(order) +
                                     " exceeds the enumeration cap " +
                                     std::to_string(enumeration_cap()));
}

std::vector<std::vector<ZetaBlock>> enum_zeta_blocks(const MultiIndex& alpha)
{
    std::vector<std::vector<ZetaBlock>> out;
    if (total(alpha) == 0)
        return out;
    auto cand = candidates(alpha);
    MultiIndex rest = alpha;
    std::vector<ZetaBlock> cur;
    blocks_rec(cand, 0, rest, cur, out);
    return out;
}

std::vector<PartitionTerm> enum_partitions(const MultiIndex& alpha, const MultiIndex& beta,
                                           PartitionVariant variant)
{
    const int n = total(alpha);
    const int nb = total(beta);
    if (n < 1)
        throw std::invalid_argument("enum_partitions: |alpha| must be at least 1");
    if (nb < 1 || nb > n)
        throw std::invalid_argument("enum_partitions: need 1 <= |beta| <= |alpha|");
    for (int x : alpha)
        if (x < 0)
            throw std::invalid_argument("enum_partitions: negative entry in alpha");
    for (int x : beta)
        if (x < 0)
            throw std::invalid_argument("enum_partitions: negative entry in beta");
    if (variant == PartitionVariant::type && (!is_ordered(alpha) || !is_ordered(beta)))
        throw std::invalid_argument("enum_partitions: type variant needs ordered alpha and beta");
    check_enumeration_cap(n);

    const size_t k = alpha.size(), m = beta.size();
    std::vector<PartitionTerm> out;
    for (const auto& blocks : enum_zeta_blocks(alpha)) {
        std::vector<int> counts;
        int csum = 0;
        for (const auto& b : blocks) {
            counts.push_back(b.count);
            csum += b.count;
        }
        if (csum != nb)
            continue;
        std::vector<std::vector<MultiIndex>> etas;
        MultiIndex rest = beta;
        std::vector<MultiIndex> cur;
        eta_rec(counts, 0, rest, cur, etas);
        const size_t s = blocks.size();
        for (const auto& eta : etas) {
            PartitionTerm t;
            t.eta.assign(n, MultiIndex(m, 0));
            t.zeta.assign(n, MultiIndex(k, 0));
            for (size_t j = 0; j < s; ++j) {
                t.eta[n - s + j] = eta[j];
                t.zeta[n - s + j] = blocks[j].zeta;
            }
            out.push_back(std::move(t));
        }
    }
    std::sort(out.begin(), out.end(), [](const PartitionTerm& a, const PartitionTerm& b) {
        auto za = flatten(a.zeta), zb = flatten(b.zeta);
        if (za != zb)
            return za < zb;
        return flatten(a.eta) < flatten(b.eta);
    });
    return out;
}

Rational fdb_weight(const PartitionTerm& term, const MultiIndex& alpha)
{
    Rational w = Rational(factorial(alpha));
    for (size_t j = 0; j < term.eta.size(); ++j) {
        int c = total(term.eta[j]);
        if (c == 0)
            continue;
        BigInt zf = factorial(term.zeta[j]);
        BigInt den = factorial(term.eta[j]);
        for (int q = 0; q < c; ++q)
            den *= zf;
        w /= Rational(den);
    }
    return w;
}

} // namespace tbound
