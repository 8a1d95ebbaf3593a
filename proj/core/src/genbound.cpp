#include "tbound/genbound.hpp"

#include <cmath>
#include <stdexcept>

namespace tbound {

void GenBoundInput::validate() const
{
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::invalid_argument("kappa: must lie in (0, 1)");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("delta: must lie in (0, 1]");
    if (N < 1)
        throw std::invalid_argument("N: must be at least 1");
    if (t && *t < N)
        throw std::invalid_argument("t: must be at least N");
    if (Md < 1)
        throw std::invalid_argument("Md: must be at least 1");
    if (constants.empty())
        throw std::invalid_argument("constants: must not be empty");
    int first = constants.begin()->first;
    if (first != 0 && first != 1)
        throw std::invalid_argument("constants: must start at s = 0 or 1");
    if (constants.rbegin()->first - first + 1 != static_cast<int>(constants.size()))
        throw std::invalid_argument("constants: orders must be contiguous");
}

double rate(double N, int s, int Md, double kappa)
{
    const double c = 1.0 - kappa;
    if (s < 0)
        throw std::invalid_argument("rate: s must be nonnegative");
    if (!(c * N > 1.0))
        throw std::domain_error("rate: (1 - kappa) N must exceed 1");
    const double L = std::log(c * N);
    if (Md > 2 * s) {
        const double q = static_cast<double>(s) / Md;
        const double p = Md - 2.0 * s + q;
        return std::exp(p * std::log(L) - q * std::log(c) - q * std::log(N));
    }
    if (Md == 2 * s)
        return L / (c * std::sqrt(N));
    return std::pow(L, static_cast<double>(Md) / (2.0 * s + 1.0)) / (c * std::sqrt(N));
}

namespace {

BoundTerms terms_at(const GenBoundInput& in, double N, std::optional<double> t, int s)
{
    BoundTerms b;
    b.time = t ? std::pow(in.kappa, *t) : 0.0;
    b.complexity = rate(N, s, in.Md, in.kappa);
    b.hprob = std::sqrt(2.0 * std::log(1.0 / in.delta)) / std::sqrt(N);
    return b;
}

LogMag assemble(const GenBoundInput& in, const BoundTerms& b, int s)
{
    auto it = in.constants.find(s);
    if (it == in.constants.end())
        throw std::out_of_range("no constant for order " + std::to_string(s));
    return it->second * LogMag::from_value(b.time + b.complexity + b.hprob);
}

} // namespace

BoundTerms bound_terms(const GenBoundInput& in, int s)
{
    std::optional<double> t;
    if (in.t)
        t = static_cast<double>(*in.t);
    return terms_at(in, static_cast<double>(in.N), t, s);
}

LogMag assembled_bound(const GenBoundInput& in, int s)
{
    return assemble(in, bound_terms(in, s), s);
}

std::vector<EnvelopeRow> envelope(const GenBoundInput& in, const std::vector<std::int64_t>& N_range,
                                  int s_max)
{
    if (N_range.empty())
        throw std::invalid_argument("envelope: N range must not be empty");
    std::vector<EnvelopeRow> rows;
    for (std::int64_t N : N_range) {
        GenBoundInput at = in;
        at.N = N;
        if (at.t && *at.t < N)
            at.t = N;
        EnvelopeRow best{N, -1, {}, LogMag::zero()};
        for (const auto& [s, C] : in.constants) {
            if (s > s_max)
                break;
            BoundTerms b = bound_terms(at, s);
            LogMag v = assemble(at, b, s);
            if (best.best_s < 0 || v < best.bound)
                best = {N, s, b, v};
        }
        rows.push_back(best);
    }
    return rows;
}

std::vector<std::int64_t> transition_times(const GenBoundInput& in, int s_max,
                                           std::int64_t n_cap)
{
    std::vector<std::int64_t> tau{0};
    // smallest admissible N for the logarithms
    const auto n_min = static_cast<std::int64_t>(std::floor(1.0 / (1.0 - in.kappa))) + 1;
    auto wins = [&](std::int64_t N, int s) {
        double n = static_cast<double>(N);
        return assemble(in, terms_at(in, n, n, s), s) <= assemble(in, terms_at(in, n, n, s - 1), s - 1);
    };
    for (int s = 1; s <= s_max; ++s) {
        std::int64_t prev = tau.back();
        if (prev == kTauUnreached || !in.constants.count(s) || !in.constants.count(s - 1)) {
            tau.push_back(kTauUnreached);
            continue;
        }
        std::int64_t lo = std::max<std::int64_t>(prev, n_min);
        if (wins(lo, s)) {
            tau.push_back(lo);
            continue;
        }
        // doubling until order s wins, then bisection on (lo, hi]
        std::int64_t hi = lo;
        bool found = false;
        while (hi < n_cap) {
            lo = hi;
            hi = hi > n_cap / 2 ? n_cap : hi * 2;
            if (wins(hi, s)) {
                found = true;
                break;
            }
        }
        if (!found) {
            tau.push_back(kTauUnreached);
            continue;
        }
        while (hi - lo > 1) {
            std::int64_t mid = lo + (hi - lo) / 2;
            (wins(mid, s) ? hi : lo) = mid;
        }
        tau.push_back(hi);
    }
    return tau;
}

} // namespace tbound
