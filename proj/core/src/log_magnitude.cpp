#include "tbound/log_magnitude.hpp"

#include <cstdio>
#include <stdexcept>

namespace tbound {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LogMag LogMag::from_log10(double lg)
{
    if (std::isnan(lg))
        throw std::domain_error("LogMag: NaN logarithm");
    LogMag m;
    m.lg_ = lg;
    return m;
}

LogMag LogMag::from_value(double v)
{
    if (std::isnan(v) || v < 0.0)
        throw std::domain_error("LogMag: value must be nonnegative");
    if (v == 0.0)
        return zero();
    return from_log10(std::log10(v));
}

double LogMag::value() const
{
    if (is_zero())
        return 0.0;
    return std::pow(10.0, lg_);
}

LogMag& LogMag::operator*=(LogMag rhs)
{
    if (is_zero() || rhs.is_zero()) {
        lg_ = -kInf;
        return *this;
    }
    lg_ += rhs.lg_;
    return *this;
}

LogMag& LogMag::operator/=(LogMag rhs)
{
    if (rhs.is_zero())
        throw std::domain_error("LogMag: division by zero");
    if (is_zero())
        return *this;
    lg_ -= rhs.lg_;
    return *this;
}

LogMag& LogMag::operator+=(LogMag rhs)
{
    if (rhs.is_zero())
        return *this;
    if (is_zero()) {
        lg_ = rhs.lg_;
        return *this;
    }
    double hi = std::max(lg_, rhs.lg_);
    double lo = std::min(lg_, rhs.lg_);
    if (hi == kInf) {
        lg_ = kInf;
        return *this;
    }
    lg_ = hi + std::log10(1.0 + std::pow(10.0, lo - hi));
    return *this;
}

LogMag LogMag::pow(double e) const
{
    if (e == 0.0)
        return one();
    if (is_zero()) {
        if (e < 0.0)
            throw std::domain_error("LogMag: negative power of zero");
        return zero();
    }
    return from_log10(lg_ * e);
}

LogMag max(LogMag a, LogMag b)
{
    return a < b ? b : a;
}

std::string format_table_value(LogMag v)
{
    char buf[64];
    if (v.is_zero()) {
        return "0.00";
    }
    if (!v.is_finite())
        return "inf";
    double lg = v.log10();
    if (lg < 3.0) {
        double x = v.value();
        std::snprintf(buf, sizeof buf, "%.2f", x);
        // 999.996 rounds up into scientific territory
        if (std::string(buf) != "1000.00")
            return buf;
        lg = 3.0;
    }
    long e = static_cast<long>(std::floor(lg));
    double mant = std::pow(10.0, lg - static_cast<double>(e));
    double rounded = std::round(mant * 100.0) / 100.0;
    if (rounded >= 10.0) {
        rounded /= 10.0;
        ++e;
    }
    std::snprintf(buf, sizeof buf, "%.2fE+%02ld", rounded, e);
    return buf;
}

} // namespace tbound
