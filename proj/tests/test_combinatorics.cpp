#include "support/brute.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tbound;

TEST_CASE("factorials, binomials and double factorials")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(9) == 945);
    CHECK_THROWS(double_factorial(6));
}

TEST_CASE("Stirling and Bell numbers agree with set partition enumeration")
{
    for (int n = 0; n <= 8; ++n) {
        std::vector<BigInt> by_blocks(n + 1, 0);
        BigInt all = 0;
        brute::set_partitions(n, [&](const std::vector<int>&, int blocks) {
            ++by_blocks[blocks];
            ++all;
        });
        CAPTURE(n);
        for (int k = 0; k <= n; ++k)
            CHECK(stirling2(n, k) == by_blocks[k]);
        CHECK(bell(n) == all);
    }
}

TEST_CASE("Touchard polynomials agree with colored set partitions")
{
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= 4; ++m) {
            BigInt sum = 0;
            brute::set_partitions(n, [&](const std::vector<int>&, int blocks) {
                BigInt w = 1;
                for (int q = 0; q < blocks; ++q)
                    w *= m;
                sum += w;
            });
            CAPTURE(n);
            CAPTURE(m);
            CHECK(touchard(n, m) == sum);
        }
}

TEST_CASE("Touchard recurrence T(n+1,m) = m sum_k C(n,k) T(k,m)")
{
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= 20; ++n) {
            BigInt rhs = 1; // T(0, m)
            for (int k = 1; k <= n; ++k)
                rhs += binomial(n, k) * touchard(k, m);
            CHECK(touchard(n + 1, m) == m * rhs);
        }
}

TEST_CASE("known values")
{
    CHECK(bell(10) == 115975);
    CHECK(stirling2(10, 3) == 9330);
    CHECK(touchard(3, 2) == 22);
}

TEST_CASE("log-space Touchard continues the exact values")
{
    for (int m : {1, 3, 10}) {
        double exact = log10_of(touchard(kExactOrderLimit, m));
        CHECK(touchard_log(kExactOrderLimit, m).log10() == doctest::Approx(exact).epsilon(1e-9));
        // just past the limit the series must keep growing like the exact recurrence
        double next = touchard_log(kExactOrderLimit + 1, m).log10();
        BigInt rhs = 1;
        for (int k = 1; k <= kExactOrderLimit; ++k)
            rhs += binomial(kExactOrderLimit, k) * touchard(k, m);
        CHECK(next == doctest::Approx(log10_of(BigInt(m * rhs))).epsilon(1e-8));
    }
}

TEST_CASE("coefficient modes")
{
    CHECK(fdb_coeff(1, 1, FactorMode::exact_touchard).value() == doctest::Approx(1.0));
    CHECK(fdb_coeff(1, 1, FactorMode::asymptotic).value() == doctest::Approx(2.0));
    for (int n = 1; n <= 12; ++n) {
        CHECK(fdb_coeff(n, 1, FactorMode::exact_touchard).log10() ==
              doctest::Approx(log10_of(bell(n))));
        CHECK(fdb_coeff(n, 3, FactorMode::asymptotic).log10() ==
              doctest::Approx(n * std::log10(6.0) + log10_of(bell(n))));
    }
}

TEST_CASE("logarithms of huge integers and rationals")
{
    BigInt big = 1;
    for (int j = 0; j < 1200; ++j)
        big *= 10;
    CHECK(log10_of(big) == doctest::Approx(1200.0));
    CHECK(log10_of(Rational(big, 1000)) == doctest::Approx(1197.0));
    CHECK(log10_of(Rational(1, 8)) == doctest::Approx(std::log10(0.125)));
}
