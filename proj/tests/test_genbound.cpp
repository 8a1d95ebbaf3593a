#include "tbound/genbound.hpp"
#include "tbound/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tbound;

namespace {

GenBoundInput flat(int Md, int s_max, double C = 1.0)
{
    GenBoundInput in;
    in.kappa = 0.5;
    in.delta = 0.05;
    in.N = 100;
    in.Md = Md;
    for (int s = 0; s <= s_max; ++s)
        in.constants[s] = LogMag::from_value(C);
    return in;
}

} // namespace

TEST_CASE("rate in the three phases")
{
    CHECK(rate(100, 1, 2, 0.5) == doctest::Approx(std::log(50.0) / 5.0).epsilon(1e-12));
    CHECK(rate(100, 1, 2, 0.5) == doctest::Approx(0.78240).epsilon(1e-5));
    // Md > 2s
    const double L = std::log(0.5 * 1e4);
    CHECK(rate(1e4, 1, 5, 0.5) ==
          doctest::Approx(std::pow(L, 3.2) / (std::pow(0.5, 0.2) * std::pow(1e4, 0.2))));
    // Md < 2s
    CHECK(rate(1e4, 3, 2, 0.5) == doctest::Approx(std::pow(L, 2.0 / 7.0) / (0.5 * 100.0)));
    CHECK_THROWS_AS(rate(2, 1, 2, 0.5), std::domain_error);
}

TEST_CASE("rate converges to 1/(c sqrt N) as the order grows")
{
    const double N = 1e6, target = 1.0 / (0.5 * std::sqrt(N));
    double prev = INFINITY;
    for (int s = 2; s <= 400; s *= 2) {
        double gap = rate(N, s, 1, 0.5) / target - 1.0;
        CHECK(gap > 0.0);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("rate vanishes as N grows")
{
    for (int s : {1, 2, 5})
        for (int Md : {1, 2, 6})
            CHECK(rate(1e300, s, Md, 0.3) < 1e-10);
}

TEST_CASE("rate is eventually strictly decreasing in N")
{
    for (double kappa : {0.1, 0.5, 0.9})
        for (int Md = 1; Md <= 8; ++Md)
            for (int s = 0; s <= 8; ++s) {
                double p, q;
                if (Md > 2 * s) {
                    q = static_cast<double>(s) / Md;
                    p = Md - 2.0 * s + q;
                } else if (Md == 2 * s) {
                    p = 1.0;
                    q = 0.5;
                } else {
                    p = static_cast<double>(Md) / (2 * s + 1);
                    q = 0.5;
                }
                if (q == 0.0)
                    continue; // s = 0 carries no decay
                const double c = 1.0 - kappa;
                double N = std::max(std::exp(p / q) / c, 4.0 / c);
                for (int step = 0; step < 6; ++step, N *= 3.0)
                    CHECK(rate(2 * N, s, Md, kappa) < rate(N, s, Md, kappa));
            }
}

TEST_CASE("bound terms")
{
    GenBoundInput in = flat(2, 3);
    BoundTerms inf = bound_terms(in, 1);
    CHECK(inf.time == 0.0);
    in.t = 100;
    CHECK(bound_terms(in, 1).time == doctest::Approx(std::pow(0.5, 100)));
    in.delta = 1.0;
    CHECK(bound_terms(in, 1).hprob == 0.0);
    in.delta = 0.05;
    BoundTerms b = bound_terms(in, 2);
    CHECK(b.time >= 0.0);
    CHECK(b.complexity >= 0.0);
    CHECK(b.hprob == doctest::Approx(std::sqrt(2.0 * std::log(20.0) / 100.0)));

    GenBoundInput longer = in;
    longer.t = 200;
    CHECK(assembled_bound(longer, 1) <= assembled_bound(in, 1));
    GenBoundInput bigger = in;
    bigger.constants[1] = LogMag::from_value(2.0);
    CHECK(assembled_bound(bigger, 1) >= assembled_bound(in, 1));
}

TEST_CASE("input validation")
{
    GenBoundInput in = flat(2, 3);
    CHECK_NOTHROW(in.validate());
    in.kappa = 1.0;
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);
    in = flat(2, 3);
    in.t = 10;
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);
    in = flat(2, 3);
    in.constants.erase(2);
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);
}

TEST_CASE("envelope picks the cheapest order")
{
    GenBoundInput in = flat(2, 4);
    auto small = envelope(in, {4, 6}, 4);
    CHECK(small.front().best_s == 0);
    auto large = envelope(in, {1'000'000'000'000'000LL}, 4);
    CHECK(large.front().best_s == 4);

    GenBoundInput single = flat(2, 0);
    single.constants = {{2, LogMag::from_value(3.0)}};
    for (const auto& r : envelope(single, {10, 100, 1000, 100000}, 5))
        CHECK(r.best_s == 2);
}

TEST_CASE("envelope order is nondecreasing in N for constant tables")
{
    for (int Md : {1, 2, 4, 8}) {
        GenBoundInput in = flat(Md, 8, 3.0);
        std::vector<std::int64_t> Ns;
        for (double N = 4; N < 1e15; N *= 1.7)
            Ns.push_back(static_cast<std::int64_t>(N));
        int prev = -1;
        for (const auto& r : envelope(in, Ns, 8)) {
            CHECK(r.best_s >= prev);
            prev = r.best_s;
        }
    }
}

TEST_CASE("transition times")
{
    GenBoundInput in = presets::genbound_base(2, 6, 1.0);
    auto tau = transition_times(in, 6);
    REQUIRE(tau.size() == 7);
    CHECK(tau[0] == 0);
    for (std::size_t s = 1; s < tau.size(); ++s)
        CHECK(tau[s] >= tau[s - 1]);
    // equal constants with Md < 2(s-1): the higher order eventually wins
    for (int s = 3; s <= 6; ++s)
        CHECK(tau[s] != kTauUnreached);

    // scaling every constant by the same factor leaves the times unchanged
    for (double f : {1e-3, 7.0, 1e6}) {
        GenBoundInput scaled = presets::genbound_base(2, 6, 2.0);
        GenBoundInput base = scaled;
        for (auto& [s, C] : scaled.constants)
            C *= LogMag::from_value(f);
        CHECK(transition_times(scaled, 6) == transition_times(base, 6));
    }
}

TEST_CASE("transition search respects the cap")
{
    GenBoundInput in = presets::genbound_base(2, 3, 1e6);
    auto tau = transition_times(in, 3, 1000);
    CHECK(tau[3] == kTauUnreached);
}
