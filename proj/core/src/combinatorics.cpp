#include "tbound/combinatorics.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace tbound {

std::string to_string(FactorMode mode)
{
    return mode == FactorMode::exact_touchard ? "exact" : "asymptotic";
}

FactorMode factor_mode_from_string(const std::string& s)
{
    if (s == "exact" || s == "exact_touchard")
        return FactorMode::exact_touchard;
    if (s == "asymptotic")
        return FactorMode::asymptotic;
    throw std::invalid_argument("unknown factor mode: " + s);
}

BigInt factorial(int n)
{
    if (n < 0)
        throw std::invalid_argument("factorial of negative number");
    BigInt r = 1;
    for (int j = 2; j <= n; ++j)
        r *= j;
    return r;
}

BigInt binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

namespace {

// Rows of the Stirling triangle, grown on demand under a lock.
class StirlingTable {
public:
    BigInt get(int n, int k)
    {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(rows_.size()) <= n)
            grow();
        if (k > n)
            return 0;
        return rows_[n][k];
    }

private:
    void grow()
    {
        if (rows_.empty()) {
            rows_.push_back({BigInt(1)});
            return;
        }
        const auto& prev = rows_.back();
        int n = static_cast<int>(rows_.size());
        std::vector<BigInt> row(n + 1, BigInt(0));
        for (int k = 1; k <= n; ++k) {
            BigInt a = k <= n - 1 ? BigInt(k) * prev[k] : BigInt(0);
            row[k] = a + prev[k - 1];
        }
        rows_.push_back(std::move(row));
    }

    std::mutex mu_;
    std::vector<std::vector<BigInt>> rows_;
};

StirlingTable& stirling_table()
{
    static StirlingTable t;
    return t;
}

} // namespace

BigInt stirling2(int n, int k)
{
    if (n < 0 || k < 0)
        throw std::invalid_argument("stirling2: negative argument");
    return stirling_table().get(n, k);
}

BigInt bell(int n)
{
    if (n < 0)
        throw std::invalid_argument("bell: negative argument");
    BigInt s = 0;
    for (int k = 0; k <= n; ++k)
        s += stirling2(n, k);
    return s;
}

BigInt touchard(int n, int m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("touchard: n and m must be positive");
    BigInt s = 0;
    BigInt mk = 1;
    for (int k = 1; k <= n; ++k) {
        mk *= m;
        s += stirling2(n, k) * mk;
    }
    return s;
}

BigInt double_factorial(int n)
{
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("double_factorial: argument must be odd and positive");
    BigInt r = 1;
    for (int j = n; j > 1; j -= 2)
        r *= j;
    return r;
}

double log10_of(const BigInt& v)
{
    if (v <= 0)
        throw std::domain_error("log10_of: nonpositive integer");
    unsigned msb = boost::multiprecision::msb(v);
    if (msb < 1000)
        return std::log10(v.convert_to<double>());
    unsigned shift = msb - 60;
    BigInt top = v >> shift;
    return std::log10(top.convert_to<double>()) + shift * std::log10(2.0);
}

double log10_of(const Rational& v)
{
    return log10_of(boost::multiprecision::numerator(v)) -
           log10_of(boost::multiprecision::denominator(v));
}

LogMag to_logmag(const BigInt& v)
{
    if (v == 0)
        return LogMag::zero();
    return LogMag::from_log10(log10_of(v));
}

LogMag to_logmag(const Rational& v)
{
    if (v == 0)
        return LogMag::zero();
    return LogMag::from_log10(log10_of(v));
}

// Dobinski: T(n, m) = e^{-m} sum_{k>=0} k^n m^k / k!, summed in log space.
LogMag touchard_log(int n, double m)
{
    if (n < 1 || m <= 0.0)
        throw std::invalid_argument("touchard_log: bad arguments");
    if (n <= kExactOrderLimit && m == std::floor(m) && m < 2e9)
        return to_logmag(touchard(n, static_cast<int>(m)));
    const double lnm = std::log(m);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (long k = 1;; ++k) {
        double t = n * std::log(static_cast<double>(k)) + k * lnm - std::lgamma(k + 1.0);
        terms.push_back(t);
        best = std::max(best, t);
        if (t < best - 60.0 && k > n + m)
            break;
        if (k > 100000000)
            throw std::runtime_error("touchard_log: series did not converge");
    }
    double s = 0.0;
    for (double t : terms)
        s += std::exp(t - best);
    double ln_total = best + std::log(s) - m;
    return LogMag::from_log10(ln_total / std::log(10.0));
}

LogMag fdb_coeff(int n, int m, FactorMode mode)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("fdb_coeff: n and m must be positive");
    if (mode == FactorMode::exact_touchard)
        return touchard_log(n, m);
    LogMag b = n <= kExactOrderLimit ? to_logmag(bell(n)) : touchard_log(n, 1.0);
    return LogMag::from_value(2.0 * m).pow(n) * b;
}

} // namespace tbound
