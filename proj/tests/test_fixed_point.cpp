#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cordiceq/fixed_point.hpp"

using namespace cordiceq;

TEST_CASE("conversion basics") {
    CHECK(to_fixed(0.0).raw() == 0);
    CHECK(to_fixed(1.0, 48, 64).raw() == std::int64_t{1} << 48);
    CHECK(to_fixed(-1.0, 48, 64).raw() == -(std::int64_t{1} << 48));
    CHECK(to_fixed(0.5, 4, 16).raw() == 8);
    CHECK(from_fixed(FixedPoint::from_raw(3, 1, 8)) == 1.5);
}

TEST_CASE("round trip error stays below half an lsb") {
    CHECK(std::abs(from_fixed(to_fixed(0.3)) - 0.3) <= 0x1p-49);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double v = value(rng);
        CHECK(std::abs(from_fixed(to_fixed(v)) - v) <= 0x1p-49);
    }
}

TEST_CASE("rounding is to nearest") {
    // 0.3 * 2^2 = 1.2 -> 1; 0.4 * 2^2 = 1.6 -> 2
    CHECK(to_fixed(0.3, 2, 16).raw() == 1);
    CHECK(to_fixed(0.4, 2, 16).raw() == 2);
    CHECK(to_fixed(-0.4, 2, 16).raw() == -2);
}

TEST_CASE("construction range checks") {
    // Q4.8: range [-8, 8 - 1/16]
    CHECK(to_fixed(7.9375, 4, 8).raw() == 127);
    CHECK(to_fixed(-8.0, 4, 8).raw() == -128);
    CHECK_THROWS_AS(to_fixed(8.0, 4, 8), std::out_of_range);
    CHECK_THROWS_AS(to_fixed(-8.04, 4, 8), std::out_of_range);
    CHECK_THROWS_AS(to_fixed(std::nan(""), 4, 8), std::out_of_range);
    CHECK_THROWS_AS(FixedPoint::from_raw(128, 4, 8), std::out_of_range);
    CHECK_NOTHROW(FixedPoint::from_raw(-128, 4, 8));
}

TEST_CASE("format validation") {
    CHECK_THROWS_AS(to_fixed(0.0, 64, 64), std::invalid_argument);
    CHECK_THROWS_AS(to_fixed(0.0, -1, 64), std::invalid_argument);
    CHECK_THROWS_AS(to_fixed(0.0, 4, 65), std::invalid_argument);
    CHECK_THROWS_AS(to_fixed(0.0, 4, 1), std::invalid_argument);
}

TEST_CASE("addition overflow throws instead of wrapping") {
    const FixedPoint a = to_fixed(6.0, 4, 8);
    const FixedPoint b = to_fixed(3.0, 4, 8);
    CHECK_THROWS_AS(a + b, std::overflow_error);
    CHECK_THROWS_AS(-a - b, std::overflow_error);
    CHECK(from_fixed(a - b) == 3.0);

    const FixedPoint big = FixedPoint::from_raw(INT64_MAX, 48, 64);
    CHECK_THROWS_AS(big + to_fixed(1.0), std::overflow_error);
    const FixedPoint min64 = FixedPoint::from_raw(INT64_MIN, 48, 64);
    CHECK_THROWS_AS(-min64, std::overflow_error);
    CHECK_THROWS_AS(min64 - to_fixed(1.0), std::overflow_error);
}

TEST_CASE("mixed formats never combine") {
    CHECK_THROWS_AS(to_fixed(1.0, 48, 64) + to_fixed(1.0, 32, 64), std::invalid_argument);
    CHECK_THROWS_AS(to_fixed(1.0, 8, 32) - to_fixed(1.0, 8, 64), std::invalid_argument);
}

TEST_CASE("right shift is arithmetic") {
    CHECK(FixedPoint::from_raw(12, 4, 16).asr(2).raw() == 3);
    // -3 >> 1 floors toward -inf, like a hardware shifter
    CHECK(FixedPoint::from_raw(-3, 4, 16).asr(1).raw() == -2);
    CHECK(FixedPoint::from_raw(-1, 4, 16).asr(1).raw() == -1);
    CHECK(FixedPoint::from_raw(-1, 4, 16).asr(200).raw() == -1);
    CHECK(FixedPoint::from_raw(12345, 4, 16).asr(200).raw() == 0);
    CHECK_THROWS_AS(to_fixed(1.0).asr(-1), std::invalid_argument);
}

TEST_CASE("shift by full word keeps only sign bits") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto raw = static_cast<std::int64_t>(rng());
        const FixedPoint v = FixedPoint::from_raw(raw, 48, 64);
        CHECK(v.asr(64).raw() == (raw < 0 ? -1 : 0));
        CHECK(v.asr(63).raw() == (raw < 0 ? -1 : 0));
    }
}
