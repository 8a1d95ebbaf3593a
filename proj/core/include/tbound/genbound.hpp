#pragma once

#include "tbound/log_magnitude.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace tbound {

struct GenBoundInput {
    double kappa = 0.5;
    double delta = 0.05;
    std::int64_t N = 1;
    // nullopt stands for t = infinity
    std::optional<std::int64_t> t;
    int Md = 1;
    std::map<int, LogMag> constants;

    void validate() const;
};

// Natural logs throughout; requires N >= 2, (1 - kappa) N > 1, s >= 0.
double rate(double N, int s, int Md, double kappa);

struct BoundTerms {
    double time = 0.0;       // kappa^t, zero for t = infinity
    double complexity = 0.0; // rate_s(N)
    double hprob = 0.0;      // sqrt(2 ln(1/delta) / N)
};

BoundTerms bound_terms(const GenBoundInput& in, int s);
// C_s times the sum of the three terms.
LogMag assembled_bound(const GenBoundInput& in, int s);

struct EnvelopeRow {
    std::int64_t N;
    int best_s;
    BoundTerms terms;
    LogMag bound;
};

// Per N the order minimizing the assembled bound over the indexed s <= s_max; ties go to smaller s.
std::vector<EnvelopeRow> envelope(const GenBoundInput& in, const std::vector<std::int64_t>& N_range,
                                  int s_max);

inline constexpr std::int64_t kTauUnreached = std::numeric_limits<std::int64_t>::max();

// tau_0 = 0; tau_s is the first N >= tau_{s-1} at which order s (with t = N) is no worse than
// order s-1. Entries beyond n_cap are kTauUnreached, as are all later ones.
std::vector<std::int64_t> transition_times(const GenBoundInput& in, int s_max,
                                           std::int64_t n_cap = 1'000'000'000'000LL);

} // namespace tbound
