#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gptest/distributions.hpp"
#include "gptest/marginal.hpp"
#include "gptest/random_projection.hpp"
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

StickWeights fixed_weights(std::vector<double> d) {
    StickWeights w;
    w.weights = Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    w.residual_mass = 1.0 - w.weights.sum();
    return w;
}

}  // namespace

TEST_CASE("stick breaking with a stubbed Beta source") {
    const auto half = stick_breaking_weights(2.0, 7.0, [] { return 0.5; }, 1e-10, 200);
    REQUIRE(half.weights.size() == 34);  // 2^-34 < 1e-10 <= 2^-33
    for (Eigen::Index k = 0; k < half.weights.size(); ++k) {
        CHECK(half.weights(k) == std::ldexp(1.0, -static_cast<int>(k) - 1));
    }
    CHECK(half.residual_mass == std::ldexp(1.0, -34));

    const auto whole = stick_breaking_weights(100.0, 1.0, [] { return 1.0; }, 1e-10, 200);
    REQUIRE(whole.weights.size() == 1);
    CHECK(whole.weights(0) == 1.0);
    CHECK(whole.residual_mass == 0.0);

    CHECK(code_of([] { (void)stick_breaking_weights(2.0, 7.0, [] { return 0.5; }, 1e-10, 10); }) ==
          ErrorCode::TruncationFailure);
    CHECK(code_of([] { (void)stick_breaking_weights(0.0, 7.0, [] { return 0.5; }, 1e-10, 10); }) ==
          ErrorCode::InvalidArgument);
}

TEST_CASE("stick breaking invariants over a lambda grid") {
    const std::vector<double> grid{0.5, 1.0, 2.0, 7.0, 100.0};
    Rng rng(314);
    for (double l1 : grid) {
        for (double l2 : grid) {
            const std::size_t kmax = default_k_max(l1, l2, 1e-10);
            CHECK(kmax >= 50);
            for (int rep = 0; rep < 20; ++rep) {
                const auto w = stick_breaking_weights(l1, l2, rng);
                CHECK((w.weights.array() >= 0.0).all());
                CHECK(w.residual_mass < 1e-10);
                CHECK(w.residual_mass >= 0.0);
                CHECK(w.weights.sum() + w.residual_mass == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(static_cast<std::size_t>(w.weights.size()) <= kmax);
                CHECK(w.lambda1 == l1);
                CHECK(w.lambda2 == l2);
            }
        }
    }
}

TEST_CASE("weights reproduce from the recorded seed") {
    Rng a(99), b(99);
    const auto w1 = stick_breaking_weights(2.0, 7.0, a);
    const auto w2 = stick_breaking_weights(2.0, 7.0, b);
    CHECK(w1.seed == w2.seed);
    CHECK(w1.weights == w2.weights);
    Rng replay(w1.seed);
    const auto w3 = stick_breaking_weights(2.0, 7.0, beta_source(2.0, 7.0, replay), 1e-10, default_k_max(2.0, 7.0, 1e-10));
    CHECK(w3.weights == w1.weights);
}

TEST_CASE("expected stick weights decay geometrically") {
    // E[d_k] = l1/(l1+l2) * (l2/(l1+l2))^k
    for (auto [l1, l2] : {std::pair{2.0, 7.0}, std::pair{100.0, 1.0}, std::pair{1.0, 1.0}}) {
        Rng rng(static_cast<std::uint64_t>(l1 * 1000 + l2));
        constexpr int draws = 10000;
        constexpr int K = 6;
        Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(K), sq = Eigen::ArrayXd::Zero(K);
        for (int r = 0; r < draws; ++r) {
            const auto w = stick_breaking_weights(l1, l2, rng);
            for (int k = 0; k < K; ++k) {
                const double d = k < w.weights.size() ? w.weights(k) : 0.0;
                sum(k) += d;
                sq(k) += d * d;
            }
        }
        for (int k = 0; k < K; ++k) {
            const double mean = sum(k) / draws;
            const double se = std::sqrt(std::max(sq(k) / draws - mean * mean, 0.0) / draws);
            const double expected = l1 / (l1 + l2) * std::pow(l2 / (l1 + l2), k);
            if (expected < 1e-6) continue;  // far tail: too skewed for a normal standard error
            INFO("lambda (" << l1 << ", " << l2 << ") k=" << k);
            CHECK(std::abs(mean - expected) <= 3.0 * se + 1e-15);
        }
    }

    Rng rng(1001);
    double d0 = 0.0;
    for (int r = 0; r < 1000; ++r) d0 += stick_breaking_weights(100.0, 1.0, rng).weights(0);
    d0 /= 1000;
    CHECK(d0 >= 0.986);
    CHECK(d0 <= 0.994);
}

TEST_CASE("projection is a causal moving sum") {
    const auto s = TimeSeries::from_values(Eigen::Vector3d(2, 4, 6), "x");
    const auto y = project(s, fixed_weights({0.5, 0.5}));
    REQUIRE(y.size() == 2);
    CHECK(y.values()(0) == 3.0);
    CHECK(y.values()(1) == 5.0);
    CHECK(y.timestamps() == std::vector<double>{1.0, 2.0});
    CHECK(y.station_id() == "x");

    Rng rng(8);
    const TimeSeries x = gaussian_arma(500, {0.3}, {}, rng);
    CHECK(project(x, fixed_weights({1.0})).values() == x.values());

    // linear in the series
    const TimeSeries z = gaussian_arma(500, {}, {}, rng);
    const auto w = stick_breaking_weights(2.0, 7.0, rng);
    const auto combo = TimeSeries::from_values(2.0 * x.values() - 3.0 * z.values());
    const Eigen::VectorXd lhs = project(combo, w).values();
    const Eigen::VectorXd rhs = 2.0 * project(x, w).values() - 3.0 * project(z, w).values();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(project(x, w).size() == x.size() - static_cast<std::size_t>(w.weights.size()) + 1);

    CHECK(code_of([] {
              (void)project(TimeSeries::from_values(Eigen::Vector2d(1, 2)), fixed_weights({0.5, 0.5}));
          }) == ErrorCode::SeriesTooShort);
}

TEST_CASE("a unit weight reduces to the direct marginal test") {
    Rng rng(12);
    const TimeSeries x = centered_exponential(800, rng);
    const auto w = stick_breaking_weights(100.0, 1.0, [] { return 1.0; }, 1e-10, 50);
    CHECK(lobato_velasco(project(x, w)).p_value == lobato_velasco(x).p_value);
    CHECK(epps(project(x, w)).p_value == epps(x).p_value);
}

TEST_CASE("projection parameter selection") {
    const auto a = select_rp_config(0.524, 0.044);
    CHECK(a.lambda1 == 100.0);
    CHECK(a.lambda2 == 1.0);
    CHECK(a.marginal_test == MarginalTest::LobatoVelasco);

    const auto b = select_rp_config(0.297, 0.780);
    CHECK(b.lambda1 == 2.0);
    CHECK(b.lambda2 == 7.0);
    CHECK(b.marginal_test == MarginalTest::Epps);

    const auto c = select_rp_config(0.5, 0.5);
    CHECK(c.lambda1 == 2.0);
    CHECK(c.marginal_test == MarginalTest::LobatoVelasco);

    const auto d = select_rp_config(0.01, 0.2);
    CHECK(d.lambda1 == 100.0);
    CHECK(d.marginal_test == MarginalTest::Epps);
}

TEST_CASE("several projections combine through the adjusted minimum") {
    Rng rng(44);
    const TimeSeries x = copula_markov_gaussian_marginal(1500, 2.0, rng);
    RpConfig cfg;
    cfg.lambda1 = 2.0;
    cfg.lambda2 = 7.0;
    cfg.num_projections = 5;

    Rng run(7), replay(7);
    const auto out = rp_test(x, cfg, run);
    std::vector<double> p;
    for (int i = 0; i < 5; ++i) p.push_back(lobato_velasco(project(x, stick_breaking_weights(2.0, 7.0, replay))).p_value);
    std::sort(p.begin(), p.end());
    const double c5 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5;
    double expected = 1e300;
    for (int j = 0; j < 5; ++j) expected = std::min(expected, p[j] * 5 * c5 / (j + 1));
    CHECK(out.p_value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(out.test_name == TestName::RandomProjection);

    cfg.num_projections = 0;
    CHECK(code_of([&] { (void)rp_test(x, cfg, run); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random projection holds size on iid Gaussian data") {
    const GeneratorSpec gen{GeneratorKind::IidGaussian, 2000, {}, {}, 0.0, 808};
    const auto band = binomial_acceptance(300, 0.05, 0.99);
    for (const RpConfig cfg : {RpConfig{100.0, 1.0, MarginalTest::LobatoVelasco},
                               RpConfig{2.0, 7.0, MarginalTest::Epps}}) {
        const auto r = calibration([cfg](const TimeSeries& s, Rng& rng) { return rp_test(s, cfg, rng); }, gen, 300, 0.05,
                                   4);
        INFO("lambda1 " << cfg.lambda1);
        CHECK(r.rejections >= band.lo);
        CHECK(r.rejections <= band.hi);
    }
}

TEST_CASE("projection exposes a Gaussian-marginal non-Gaussian process") {
    const GeneratorSpec gen{GeneratorKind::CopulaMarkovGaussianMarginal, 2000, {}, {}, 2.0, 515};
    const RpConfig cfg{2.0, 7.0, MarginalTest::LobatoVelasco};
    const auto rp = calibration([cfg](const TimeSeries& s, Rng& rng) { return rp_test(s, cfg, rng); }, gen, 100, 0.05, 4);
    const auto lv = calibration([](const TimeSeries& s, Rng&) { return lobato_velasco(s); }, gen, 100, 0.05, 4);
    CHECK(rp.rate >= 0.8);
    CHECK(rp.rate > lv.rate);
}
