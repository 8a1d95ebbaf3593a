#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace tbound {

// Nonnegative extended real carried as its base-10 logarithm.
// Zero is represented by log10 = -inf and stays exact under multiplication.
class LogMag {
public:
    LogMag() = default;

    static LogMag zero() { return LogMag(); }
    static LogMag one() { return from_log10(0.0); }
    static LogMag from_log10(double lg);
    static LogMag from_value(double v);

    double log10() const { return lg_; }
    bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }
    bool is_finite() const { return lg_ < std::numeric_limits<double>::infinity(); }
    // Plain value; overflows to +inf above ~1e308.
    double value() const;

    LogMag& operator*=(LogMag rhs);
    LogMag& operator/=(LogMag rhs);
    LogMag& operator+=(LogMag rhs);

    friend LogMag operator*(LogMag a, LogMag b) { return a *= b; }
    friend LogMag operator/(LogMag a, LogMag b) { return a /= b; }
    friend LogMag operator+(LogMag a, LogMag b) { return a += b; }

    friend bool operator==(LogMag a, LogMag b) { return a.lg_ == b.lg_; }
    friend auto operator<=>(LogMag a, LogMag b) { return a.lg_ <=> b.lg_; }

    LogMag pow(double e) const;

private:
    double lg_ = -std::numeric_limits<double>::infinity();
};

LogMag max(LogMag a, LogMag b);

// Table-style rendering: fixed two decimals below 1000, otherwise "1.33E+04".
std::string format_table_value(LogMag v);

} // namespace tbound
