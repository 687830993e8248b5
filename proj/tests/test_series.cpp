#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gptest/series.hpp"

using namespace gptest;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TimeSeries series_of(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double d : v) x(i++) = d;
    return TimeSeries::from_values(x);
}

Eigen::VectorXd gaussian(Eigen::Index n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::VectorXd x(n);
    for (auto& v : x) v = N(rng);
    return x;
}

}  // namespace

TEST_CASE("autocovariance follows the denominator-n formula") {
    const auto s = series_of({1, -1, 1, -1});
    CHECK(autocovariance(s, 1) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(autocorrelation(s, 1) == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(autocovariance(s, 0) == doctest::Approx(moments(s).variance));
    CHECK(autocorrelation(s, 0) == 1.0);

    const auto flat = series_of({3, 3, 3, 3});
    CHECK(autocovariance(flat, 1) == 0.0);
    CHECK_THROWS_AS(static_cast<void>(autocorrelation(flat, 1)), Error);

    try {
        static_cast<void>(autocovariance(s, 4));
        FAIL("expected LagTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LagTooLarge);
    }
}

TEST_CASE("estimator invariants") {
    const Eigen::VectorXd x = gaussian(500, 11);
    const auto s = TimeSeries::from_values(x);
    const auto reversed = TimeSeries::from_values(x.reverse());
    const auto mapped = affine(s, -2.5, 7.0);
    for (Eigen::Index k : {0, 1, 2, 7, 100, 499}) {
        CHECK(autocovariance(reversed, k) == doctest::Approx(autocovariance(s, k)).epsilon(1e-12));
        CHECK(autocorrelation(mapped, k) == doctest::Approx(autocorrelation(s, k)).epsilon(1e-9));
    }
}

TEST_CASE("FFT autocovariances match direct summation") {
    const Eigen::VectorXd x = gaussian(777, 3);
    const Eigen::VectorXd direct = autocovariances(x, 776);
    const Eigen::VectorXd fast = autocovariances_fft(x);
    REQUIRE(fast.size() == 777);
    CHECK((direct - fast).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moments use denominator n") {
    const auto m = moments(series_of({1, 2, 3, 6}));
    CHECK(m.mean == doctest::Approx(3.0));
    CHECK(m.variance == doctest::Approx((4 + 1 + 0 + 9) / 4.0));
    CHECK(m.central_moment_3 == doctest::Approx((-8 - 1 + 0 + 27) / 4.0));
    CHECK(m.central_moment_4 == doctest::Approx((16 + 1 + 0 + 81) / 4.0));
}

TEST_CASE("clean drops missing samples and records lengths") {
    RawRecord raw{"433", {1, 2, 3, 4, 5}, {0.1, kNaN, 0.3, kNaN, 0.5}};
    const auto s = clean(raw);
    CHECK(s.size() == 3);
    CHECK(s.raw_length() == 5);
    CHECK(s.timestamps() == std::vector<double>{1, 3, 5});
    CHECK(s.values()(1) == 0.3);

    SUBCASE("no missing entries keeps everything") {
        RawRecord full{"x", {1, 2, 3}, {1.0, 2.0, 3.0}};
        const auto c = clean(full);
        CHECK(c.size() == c.raw_length());
    }
    SUBCASE("all missing") {
        RawRecord empty{"244", {1, 2, 3}, {kNaN, kNaN, kNaN}};
        try {
            static_cast<void>(clean(empty));
            FAIL("expected AllMissing");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::AllMissing);
        }
    }
    SUBCASE("idempotent") {
        const auto twice = clean(clean(raw));
        CHECK(twice.values() == s.values());
        CHECK(twice.timestamps() == s.timestamps());
        CHECK(twice.raw_length() == s.raw_length());
    }
    SUBCASE("duplicate timestamps are rejected") {
        RawRecord dup{"d", {1, 1, 2}, {1.0, 2.0, 3.0}};
        CHECK_THROWS_AS(static_cast<void>(clean(dup)), Error);
    }
}

TEST_CASE("truncate_to_first counts missing markers inside the window") {
    // buoy 433 shape: 30000-sample window holding 6912 missing values -> 23088 studied
    RawRecord raw;
    raw.station_id = "433";
    for (int i = 0; i < 31000; ++i) {
        raw.timestamps.push_back(1611244667.0 + i * 0.78125);
        const bool gap = (i >= 5000 && i < 8000) || (i >= 12000 && i < 15912);
        raw.values.push_back(gap ? kNaN : std::sin(i * 0.1));
    }
    const auto s = clean(truncate_to_first(raw, 30000));
    CHECK(s.size() == 23088);
    CHECK(s.raw_length() == 30000);

    SUBCASE("shorter than n_max is unchanged") {
        const auto t = truncate_to_first(s, 1000000);
        CHECK(t.size() == s.size());
    }
    SUBCASE("n_max = 1") {
        const auto t = truncate_to_first(s, 1);
        CHECK(t.size() == 1);
        CHECK(t.values()(0) == s.values()(0));
    }
    SUBCASE("unsorted records are ordered by timestamp first") {
        RawRecord shuffled{"s", {3, 1, 2}, {30, 10, 20}};
        const auto t = truncate_to_first(shuffled, 2);
        CHECK(t.timestamps == std::vector<double>{1, 2});
        CHECK(t.values == std::vector<double>{10, 20});
    }
}
