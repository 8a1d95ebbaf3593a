#pragma once

#include "tbound/combinatorics.hpp"

#include <stdexcept>
#include <vector>

namespace tbound {

// alpha in N^k; ordered multi-indices are the same type with nonincreasing entries.
using MultiIndex = std::vector<int>;

int total(const MultiIndex& a);
BigInt factorial(const MultiIndex& a);
bool is_ordered(const MultiIndex& a);

// The order operator: entries sorted nonincreasingly.
MultiIndex order(const MultiIndex& a);
// Nonzero entries of order(a); the dimension-free key of a derivative type.
MultiIndex type_key(const MultiIndex& a);
// type_key padded with zeros to length k.
MultiIndex pad(const MultiIndex& key, int k);

// N(alpha): number of alpha' in N^k with order(alpha') = alpha.
BigInt count_equivalent(const MultiIndex& alpha, int k);

// Partitions of n into at most k parts (or of every n' <= n), padded to length k.
std::vector<MultiIndex> enum_ordered(int k, int n, bool cumulative);
// Partitions of n into at most max_parts parts, as type keys (descending order).
std::vector<MultiIndex> partitions(int n, int max_parts);

// The strict order used to arrange zeta blocks: total first, then lexicographic.
bool precedes(const MultiIndex& a, const MultiIndex& b);

struct PartitionTerm {
    std::vector<MultiIndex> eta;  // n entries in N^m
    std::vector<MultiIndex> zeta; // n entries in N^k
};

enum class PartitionVariant { standard, type };

class EnumerationCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int enumeration_cap();
void set_enumeration_cap(int cap);
// Throws EnumerationCapExceeded when |alpha| is above the cap.
void check_enumeration_cap(int order);

// All (eta, zeta) in P(alpha, beta), sorted by flattened zeta then eta.
// The type variant expects ordered alpha and beta and returns the representatives
// whose totals, weighted by N(beta), recover the sum over all beta.
std::vector<PartitionTerm> enum_partitions(const MultiIndex& alpha, const MultiIndex& beta,
                                           PartitionVariant variant);

Rational fdb_weight(const PartitionTerm& term, const MultiIndex& alpha);

// A distinct zeta with its multiplicity c = |eta|.
struct ZetaBlock {
    MultiIndex zeta;
    int count;
};

// Every set of distinct nonzero zeta <= alpha with counts c, sum c*zeta = alpha,
// listed in increasing precedes-order inside each set.
std::vector<std::vector<ZetaBlock>> enum_zeta_blocks(const MultiIndex& alpha);

} // namespace tbound
