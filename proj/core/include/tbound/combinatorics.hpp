#pragma once

#include "tbound/log_magnitude.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tbound {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Coefficient convention for the Faa di Bruno mass in level bounds.
// exact_touchard: T(n, m), the true sum of the weights.
// asymptotic: (2m)^n B(n), a cruder closed form that dominates T(n, m).
enum class FactorMode { exact_touchard, asymptotic };

std::string to_string(FactorMode mode);
FactorMode factor_mode_from_string(const std::string& s);

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt stirling2(int n, int k);
BigInt bell(int n);
BigInt touchard(int n, int m);
// n odd and positive
BigInt double_factorial(int n);

double log10_of(const BigInt& v);
double log10_of(const Rational& v);
LogMag to_logmag(const BigInt& v);
LogMag to_logmag(const Rational& v);

// Exact arithmetic up to this order; above it the log-space Dobinski series is used.
inline constexpr int kExactOrderLimit = 64;

LogMag touchard_log(int n, double m);
LogMag fdb_coeff(int n, int m, FactorMode mode);

} // namespace tbound
