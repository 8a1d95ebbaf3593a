#include "tbound/activations.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tbound;

namespace {

const ActivationKind kAll[] = {ActivationKind::softplus, ActivationKind::gelu, ActivationKind::tanh,
                               ActivationKind::swish, ActivationKind::sigmoid};

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

} // namespace

TEST_CASE("low-order derivatives match closed forms")
{
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        CAPTURE(x);
        double s = sigmoid(x);
        CHECK(activation_deriv(ActivationKind::sigmoid, 1, x) == doctest::Approx(s * (1 - s)));
        CHECK(activation_deriv(ActivationKind::sigmoid, 2, x) ==
              doctest::Approx(s * (1 - s) * (1 - 2 * s)));
        CHECK(activation_deriv(ActivationKind::softplus, 1, x) == doctest::Approx(s));
        double t = std::tanh(x);
        CHECK(activation_deriv(ActivationKind::tanh, 1, x) == doctest::Approx(1 - t * t));
        CHECK(activation_deriv(ActivationKind::tanh, 2, x) == doctest::Approx(-2 * t * (1 - t * t)));
        CHECK(activation_deriv(ActivationKind::gelu, 1, x) ==
              doctest::Approx(0.5 * std::erfc(-x / std::sqrt(2.0)) + x * phi(x)));
        CHECK(activation_deriv(ActivationKind::gelu, 2, x) == doctest::Approx(phi(x) * (2 - x * x)));
        CHECK(activation_deriv(ActivationKind::swish, 1, x) == doctest::Approx(s + x * s * (1 - s)));
    }
}

TEST_CASE("Taylor expansion through order 10 reproduces the function")
{
    const double h = 0.1;
    for (auto kind : kAll)
        for (double x : {-2.0, -0.3, 0.0, 1.1}) {
            double sum = 0.0, fact = 1.0, hp = 1.0;
            for (int j = 0; j <= 10; ++j) {
                if (j) {
                    fact *= j;
                    hp *= h;
                }
                sum += activation_deriv(kind, j, x) * hp / fact;
            }
            CAPTURE(to_string(kind));
            CAPTURE(x);
            CHECK(sum == doctest::Approx(activation_value(kind, x + h)).epsilon(1e-10));
        }
}

TEST_CASE("values far in the tails stay finite")
{
    for (auto kind : kAll)
        for (double x : {-30.0, 30.0})
            for (int n = 0; n <= 10; ++n)
                CHECK(std::isfinite(activation_deriv(kind, n, x)));
}

TEST_CASE("maximize_abs finds interior and boundary maxima")
{
    CHECK(maximize_abs([](double x) { return std::sin(x); }, {-1.0, 2.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(maximize_abs([](double x) { return x; }, {-3.0, 2.0}) == doctest::Approx(3.0));
    CHECK(maximize_abs([](double x) { return x * x - 1; }, {0.5, 0.5}) == doctest::Approx(0.75));
}

TEST_CASE("tanh bound polynomial maxima are the powers of two up to order four")
{
    CHECK(activation_bound(ActivationKind::tanh, 1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(activation_bound(ActivationKind::tanh, 2) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(activation_bound(ActivationKind::tanh, 3) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(activation_bound(ActivationKind::tanh, 4) == doctest::Approx(32.0).epsilon(1e-12));
}

TEST_CASE("the tanh bound polynomial dominates the true derivative")
{
    for (int n = 1; n <= 10; ++n)
        CHECK(activation_bound(ActivationKind::tanh, n) >=
              derivative_sup(ActivationKind::tanh, n, {-30, 30}) * (1 - 1e-12));
}

TEST_CASE("softplus reports the sigmoid derivative of the same order")
{
    for (int n = 1; n <= 10; ++n)
        CHECK(activation_bound(ActivationKind::softplus, n) ==
              doctest::Approx(derivative_sup(ActivationKind::sigmoid, n, {-30, 30})));
    CHECK(derivative_sup(ActivationKind::softplus, 2, {-30, 30}) == doctest::Approx(0.25));
}

TEST_CASE("suprema on small domains")
{
    CHECK(derivative_sup(ActivationKind::sigmoid, 1, {0, 0}) == doctest::Approx(0.25));
    CHECK(derivative_sup(ActivationKind::sigmoid, 0, {-1, 1}) == doctest::Approx(sigmoid(1.0)));
    // GeLU'(x) = Phi + x phi peaks at x = sqrt(2)
    CHECK(derivative_sup(ActivationKind::gelu, 1, {-30, 30}) ==
          doctest::Approx(0.5 * std::erfc(-1.0) + std::sqrt(2.0) * phi(std::sqrt(2.0))));
}

TEST_CASE("the closed-form GeLU bound dominates the numerical supremum")
{
    for (int n = 2; n <= 10; ++n)
        CHECK(gelu_closed_form_bound(n) >= derivative_sup(ActivationKind::gelu, n, {-30, 30}));
}

TEST_CASE("names round-trip")
{
    for (auto kind : kAll)
        CHECK(activation_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(activation_from_string("relu"), std::invalid_argument);
}
