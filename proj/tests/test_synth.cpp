#include <doctest.h>

#include <cmath>
#include <vector>

#include "gptest/distributions.hpp"
#include "gptest/marginal.hpp"
#include "gptest/random_projection.hpp"
#include "gptest/stationarity.hpp"
#include "gptest/synth.hpp"

using namespace gptest;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidArgument;
}

double lag1_corr(const Eigen::VectorXd& x) {
    const double m = x.mean();
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        den += (x(i) - m) * (x(i) - m);
        if (i + 1 < x.size()) num += (x(i) - m) * (x(i + 1) - m);
    }
    return num / den;
}

double lag1_tau(const Eigen::VectorXd& x) {
    const Eigen::Index n = x.size();
    return kendall_tau(x.head(n - 1), x.tail(n - 1));
}

}  // namespace

TEST_CASE("white noise and AR(1) moments") {
    Rng rng(1);
    const TimeSeries w = gaussian_arma(10000, {}, {}, rng);
    const double var = (w.values().array() - w.values().mean()).square().mean();
    CHECK(std::abs(var - 1.0) <= 3.0 * std::sqrt(2.0 / 10000));
    CHECK(std::abs(w.values().mean()) <= 3.0 / 100.0);

    const TimeSeries a = gaussian_arma(10000, {0.5}, {}, rng);
    CHECK(std::abs(lag1_corr(a.values()) - 0.5) <= 3.0 * std::sqrt(0.75 / 10000));
    CHECK(a.size() == 10000);
}

TEST_CASE("ARMA coefficient checks") {
    CHECK(ar_spectral_radius({}) == 0.0);
    CHECK(ar_spectral_radius({0.5}) == doctest::Approx(0.5));
    CHECK(ar_spectral_radius({0.5, 0.3}) == doctest::Approx((0.5 + std::sqrt(1.45)) / 2.0));
    CHECK(arma_burn_in({0.5}, {}) == 200);
    CHECK(arma_burn_in({}, {}) == 100);
    Rng rng(2);
    CHECK(code_of([&] { (void)gaussian_arma(100, {1.0}, {}, rng); }) == ErrorCode::NonstationaryCoefficients);
    CHECK(code_of([&] { (void)gaussian_arma(100, {0.5, 0.6}, {}, rng); }) == ErrorCode::NonstationaryCoefficients);
}

TEST_CASE("Clayton conditional inverse") {
    // C(v | u) = u^(-t-1) (u^-t + v^-t - 1)^(-1/t - 1)
    for (double theta : {0.3, 2.0, 8.0}) {
        for (double u : {0.05, 0.4, 0.9}) {
            for (double w : {0.01, 0.5, 0.99}) {
                const double v = clayton_conditional_inverse(u, w, theta);
                const double c = std::pow(u, -theta - 1) * std::pow(std::pow(u, -theta) + std::pow(v, -theta) - 1, -1 / theta - 1);
                CHECK(c == doctest::Approx(w).epsilon(1e-10));
                CHECK(v > 0.0);
                CHECK(v < 1.0);
            }
        }
    }
}

TEST_CASE("copula chain rank correlation") {
    // tau = theta / (theta + 2) for Clayton
    constexpr int reps = 20;
    std::vector<double> taus;
    for (int r = 0; r < reps; ++r) {
        Rng rng(derive_seed(33, static_cast<std::uint64_t>(r)));
        taus.push_back(lag1_tau(copula_markov_gaussian_marginal(10000, 2.0, rng).values()));
    }
    double mean = 0.0, sq = 0.0;
    for (double t : taus) mean += t / reps;
    for (double t : taus) sq += (t - mean) * (t - mean);
    const double sd = std::sqrt(sq / (reps - 1));
    CHECK(std::abs(mean - 0.5) <= 3.0 * sd / std::sqrt(double(reps)));
    for (double t : taus) CHECK(std::abs(t - 0.5) <= 3.0 * sd + 1e-3);

    // theta near 0 is the independence copula
    Rng rng(34);
    const TimeSeries ind = copula_markov_gaussian_marginal(4000, 1e-8, rng);
    const double n = 3999.0;
    CHECK(std::abs(lag1_tau(ind.values())) <= 3.0 * std::sqrt(2.0 * (2.0 * n + 5.0) / (9.0 * n * (n - 1.0))));
    CHECK(std::abs(lag1_corr(ind.values())) <= 3.0 / std::sqrt(n));
}

TEST_CASE("copula chain has Gaussian one-dimensional marginals") {
    int accepted = 0;
    for (int r = 0; r < 100; ++r) {
        Rng rng(derive_seed(35, static_cast<std::uint64_t>(r)));
        const TimeSeries x = copula_markov_gaussian_marginal(10000, 2.0, rng);
        Eigen::VectorXd thin(1000);
        for (Eigen::Index i = 0; i < 1000; ++i) thin(i) = x.values()(10 * i);
        accepted += !epps(TimeSeries::from_values(thin)).rejects(0.05);
    }
    CHECK(accepted >= 90);
}

TEST_CASE("synthetic stationary processes pass the stationarity panel" * doctest::may_fail()) {
    int arma = 0, copula = 0;
    for (int r = 0; r < 100; ++r) {
        Rng a(derive_seed(36, static_cast<std::uint64_t>(r)));
        arma += stationarity_panel(gaussian_arma(10000, {0.5}, {0.3}, a)).stationary;
        Rng c(derive_seed(37, static_cast<std::uint64_t>(r)));
        copula += stationarity_panel(copula_markov_gaussian_marginal(10000, 2.0, c)).stationary;
    }
    MESSAGE("panel pass counts: arma " << arma << "/100, copula " << copula << "/100");
    CHECK(arma >= 95);
    CHECK(copula >= 95);
}

TEST_CASE("random projection holds size on a Gaussian ARMA") {
    const GeneratorSpec gen{GeneratorKind::GaussianARMA, 2000, {0.5}, {0.3}, 0.0, 38};
    const auto band = binomial_acceptance(200, 0.05, 0.99);
    for (const RpConfig cfg : {RpConfig{2.0, 7.0, MarginalTest::LobatoVelasco}, RpConfig{100.0, 1.0, MarginalTest::Epps}}) {
        const auto r = calibration([cfg](const TimeSeries& s, Rng& rng) { return rp_test(s, cfg, rng); }, gen, 200, 0.05, 4);
        CHECK(r.rejections <= band.hi);
    }
}

TEST_CASE("generators are deterministic") {
    for (auto kind : {GeneratorKind::IidGaussian, GeneratorKind::GaussianARMA, GeneratorKind::CenteredExponential,
                      GeneratorKind::CopulaMarkovGaussianMarginal}) {
        const GeneratorSpec spec{kind, 3000, {0.4}, {0.2}, 2.0, 123};
        const TimeSeries a = generate(spec), b = generate(spec);
        CHECK(a.values() == b.values());
        CHECK(a.size() == 3000);
        CHECK(generator_kind_from_string(to_string(kind)) == kind);
        GeneratorSpec other = spec;
        other.seed = 124;
        CHECK(generate(other).values() != a.values());
    }
}

TEST_CASE("calibration mechanics") {
    const GeneratorSpec gen{GeneratorKind::IidGaussian, 500, {}, {}, 0.0, 39};
    const SeriesTest lb = [](const TimeSeries& s, Rng&) { return ljung_box(s, 10); };
    const auto zero = calibration(lb, gen, 100, 0.0);
    CHECK(zero.rejections == 0);
    CHECK(zero.rate == 0.0);
    CHECK(zero.p_values.size() == 100);

    const auto one = calibration(lb, gen, 150, 0.05, 1);
    const auto many = calibration(lb, gen, 150, 0.05, 6);
    CHECK(one.p_values == many.p_values);
    CHECK(one.interval.lo <= one.rate);
    CHECK(one.interval.hi >= one.rate);

    CHECK(code_of([&] { (void)calibration(lb, gen, 99, 0.05); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("normal quantile accuracy") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
    for (double p = 0.0005; p < 1.0; p += 0.001) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    }
}
