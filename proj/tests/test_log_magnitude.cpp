#include "tbound/log_magnitude.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tbound;

TEST_CASE("zero is absorbing and exact")
{
    LogMag z = LogMag::zero();
    CHECK(z.is_zero());
    CHECK((z * LogMag::from_value(1e300)).is_zero());
    CHECK((z + LogMag::from_value(3.0)).value() == doctest::Approx(3.0));
    CHECK(LogMag::from_value(0.0).is_zero());
    CHECK_THROWS_AS(LogMag::one() / z, std::domain_error);
}

TEST_CASE("arithmetic matches plain doubles in range")
{
    LogMag a = LogMag::from_value(12.5), b = LogMag::from_value(0.04);
    CHECK((a * b).value() == doctest::Approx(0.5));
    CHECK((a / b).value() == doctest::Approx(312.5));
    CHECK((a + b).value() == doctest::Approx(12.54));
    CHECK(a.pow(3).value() == doctest::Approx(1953.125));
    CHECK(max(a, b) == a);
    CHECK(b < a);
}

TEST_CASE("sums far beyond double range stay finite")
{
    LogMag big = LogMag::from_log10(5000.0);
    LogMag s = big + big;
    CHECK(s.log10() == doctest::Approx(5000.0 + std::log10(2.0)));
    CHECK(s.is_finite());
    CHECK((big + LogMag::one()).log10() == doctest::Approx(5000.0));
}

TEST_CASE("table formatting")
{
    CHECK(format_table_value(LogMag::from_value(13300.0)) == "1.33E+04");
    CHECK(format_table_value(LogMag::from_value(17.0)) == "17.00");
    CHECK(format_table_value(LogMag::from_value(999.994)) == "999.99");
    CHECK(format_table_value(LogMag::from_value(1000.0)) == "1.00E+03");
    CHECK(format_table_value(LogMag::from_value(9.999e5)) == "1.00E+06");
    CHECK(format_table_value(LogMag::zero()) == "0.00");
    CHECK(format_table_value(LogMag::from_value(0.004)) == "0.00");
    CHECK(format_table_value(LogMag::from_log10(301.9)) == "7.94E+301");
    CHECK(format_table_value(LogMag::from_log10(1234.0)) == "1.00E+1234");
}
