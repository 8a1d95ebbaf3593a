#include "tbound/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tbound;

namespace {

ArchSpec small_spec()
{
    ArchSpec s;
    s.M = 3;
    s.i = 2;
    s.k = 2;
    s.v = 2;
    s.l = 4;
    s.o = 2;
    s.H = 2;
    s.C_K = s.C_Q = s.C_V = s.C_W = 0.5;
    s.C_A = s.C_B1 = s.C_B2 = 0.5;
    s.gamma = 1.0;
    s.w = 1.0;
    s.activation = ActivationKind::tanh;
    s.radius = 1.0;
    return s;
}

} // namespace

TEST_CASE("finite differences recover polynomial and exponential derivatives")
{
    auto sq = [](const Vec& x) { return Vec{x[0] * x[0]}; };
    CHECK(numeric_partial(sq, {0.3}, {2}, 1e-2)[0] == doctest::Approx(2.0).epsilon(1e-8));
    auto xy = [](const Vec& x) { return Vec{x[0] * x[1]}; };
    CHECK(numeric_partial(xy, {0.3, -0.7}, {1, 1}, 1e-2)[0] == doctest::Approx(1.0).epsilon(1e-8));
    auto ex = [](const Vec& x) { return Vec{std::exp(x[0])}; };
    CHECK(numeric_partial(ex, {0.0}, {3}, 1e-2)[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(numeric_partial(ex, {0.5}, {1}, 1e-3)[0] ==
          doctest::Approx(std::exp(0.5)).epsilon(1e-10));
    CHECK_THROWS(numeric_partial(sq, {0.0}, {4}, 1e-2));
    CHECK_THROWS(numeric_partial(sq, {0.0}, {1}, 1.0));
}

TEST_CASE("zero weights give the zero map")
{
    ArchSpec s = small_spec();
    s.C_K = s.C_Q = s.C_V = s.C_W = 0.0;
    for (Component c : {Component::dotp, Component::attention, Component::multihead}) {
        ConcreteNetwork net(c, s, 7);
        Vec x(static_cast<std::size_t>(net.input_dim()), 0.4);
        for (double y : net.evaluate(x))
            CHECK(y == 0.0);
    }
}

TEST_CASE("single-element attention passes the value through")
{
    ArchSpec s = small_spec();
    s.M = 1;
    s.H = 1;
    ArchSpec flat = s;
    flat.C_Q = flat.C_K = 0.0; // scores vanish, weight stays 1
    Vec x{0.3, -0.2};
    CHECK(ConcreteNetwork(Component::attention, s, 3).evaluate(x) ==
          ConcreteNetwork(Component::attention, flat, 3).evaluate(x));
}

TEST_CASE("attention is permutation equivariant")
{
    ArchSpec s = small_spec();
    s.H = 1;
    ConcreteNetwork net(Component::attention, s, 11);
    Vec x{0.1, 0.2, -0.3, 0.4, 0.5, -0.6};
    Vec p{0.5, -0.6, 0.1, 0.2, -0.3, 0.4}; // rows (0 1 2) -> (2 0 1)
    Vec y = net.evaluate(x), yp = net.evaluate(p);
    for (int c = 0; c < 2; ++c) {
        CHECK(yp[0 * 2 + c] == doctest::Approx(y[2 * 2 + c]));
        CHECK(yp[1 * 2 + c] == doctest::Approx(y[0 * 2 + c]));
        CHECK(yp[2 * 2 + c] == doctest::Approx(y[1 * 2 + c]));
    }
}

TEST_CASE("layer norm output is centered when w = 1 and beta = 0")
{
    ArchSpec s = small_spec();
    s.i = 4;
    ConcreteNetwork net(Component::layernorm, s, 5);
    Vec y = net.evaluate({0.9, -0.2, 0.4, 0.1});
    double sum = 0.0;
    for (double e : y)
        sum += e;
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sampling is deterministic per seed")
{
    ArchSpec s = small_spec();
    ConcreteNetwork a(Component::block, s, 42), b(Component::block, s, 42), c(Component::block, s, 43);
    Vec x(static_cast<std::size_t>(a.input_dim()), 0.25);
    CHECK(a.evaluate(x) == b.evaluate(x));
    CHECK(a.evaluate(x) != c.evaluate(x));
    CHECK(sample_points(3, 1.0, 10, 9) == sample_points(3, 1.0, 10, 9));
    for (const auto& p : sample_points(3, 0.5, 50, 9))
        for (double e : p)
            CHECK(std::abs(e) <= 0.5);
}

TEST_CASE("input size is checked")
{
    ConcreteNetwork net(Component::multihead, small_spec(), 1);
    CHECK_THROWS_AS(net.evaluate({0.1}), std::invalid_argument);
}

TEST_CASE("empirical estimates cover every type once")
{
    ConcreteNetwork net(Component::dotp, small_spec(), 2);
    auto est = empirical_cs(net, 1.0, 2, 8, 2);
    CHECK(est.size() == 3); // (1), (2), (1,1)
    for (const auto& e : est)
        CHECK(e.value >= 0.0);
}

TEST_CASE("violation threshold")
{
    CHECK_FALSE(exceeds(1.0, LogMag::from_value(1.0)));
    CHECK_FALSE(exceeds(1.0 + 1e-7, LogMag::from_value(1.0)));
    CHECK(exceeds(1.01, LogMag::from_value(1.0)));
    CHECK_FALSE(exceeds(0.0, LogMag::zero()));
}

TEST_CASE("small soundness runs hold")
{
    const ArchSpec s = small_spec();
    for (Component c : {Component::dotp, Component::attention, Component::multihead,
                        Component::layernorm, Component::feedforward}) {
        auto rep = soundness_check(c, s, 2, 2, 17, 16);
        CAPTURE(to_string(c));
        CHECK(rep.violations == 0);
        CHECK(!rep.entries.empty());
    }
}

TEST_CASE("measured derivatives are nontrivial and vanish where the bound does")
{
    ConcreteNetwork net(Component::dotp, small_spec(), 4);
    const auto f = [&net](const Vec& x) { return net.evaluate(x); };
    Vec x(static_cast<std::size_t>(net.input_dim()), 0.3);
    double largest = 0.0;
    for (const auto& e : empirical_cs(net, 1.0, 2, 8, 4))
        largest = std::max(largest, e.value);
    CHECK(largest > 1e-3);
    for (double y : numeric_partial(f, x, {3, 0, 0, 0, 0, 0}, 1e-2))
        CHECK(std::abs(y) < 1e-8);
}
