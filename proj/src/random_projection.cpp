#include "gptest/random_projection.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "gptest/marginal.hpp"
#include "gptest/multiplicity.hpp"

namespace gptest {

std::string_view to_string(MarginalTest t) noexcept {
    return t == MarginalTest::Epps ? "Epps" : "LobatoVelasco";
}

MarginalTest marginal_test_from_string(std::string_view s) {
    if (s == "Epps" || s == "epps") return MarginalTest::Epps;
    if (s == "LobatoVelasco" || s == "lobato_velasco" || s == "lv") return MarginalTest::LobatoVelasco;
    throw Error(ErrorCode::ParseError, "unknown marginal test '" + std::string(s) + "'");
}

BetaSource beta_source(double lambda1, double lambda2, Rng& rng) {
    return [g1 = std::gamma_distribution<double>(lambda1, 1.0), g2 = std::gamma_distribution<double>(lambda2, 1.0),
            &rng]() mutable {
        const double a = g1(rng);
        const double b = g2(rng);
        return (a + b > 0.0) ? a / (a + b) : 0.5;
    };
}

std::size_t default_k_max(double lambda1, double lambda2, double epsilon) {
    const double by_ratio = std::ceil(10.0 * (1.0 + lambda2 / lambda1));
    const double log_shrink = boost::math::digamma(lambda2) - boost::math::digamma(lambda1 + lambda2);
    const double by_mass = std::ceil(3.0 * std::log(epsilon) / log_shrink);
    return static_cast<std::size_t>(std::max({50.0, by_ratio, by_mass}));
}

StickWeights stick_breaking_weights(double lambda1, double lambda2, const BetaSource& draw, double epsilon,
                                    std::size_t k_max) {
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "stick_breaking_weights: lambdas must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "stick_breaking_weights: epsilon must lie in (0, 1)");
    }
    if (k_max < 1) {
        throw Error(ErrorCode::InvalidArgument, "stick_breaking_weights: k_max must be >= 1");
    }
    std::vector<double> d;
    double residual = 1.0;
    while (residual >= epsilon && d.size() < k_max) {
        const double b = std::clamp(draw(), 0.0, 1.0);
        d.push_back(residual * b);
        residual *= (1.0 - b);
    }
    if (residual >= epsilon) {
        throw Error(ErrorCode::TruncationFailure, "stick_breaking_weights: residual mass " + std::to_string(residual) +
                                                      " still above epsilon after k_max weights");
    }
    StickWeights w;
    w.lambda1 = lambda1;
    w.lambda2 = lambda2;
    w.weights = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    w.residual_mass = residual;
    return w;
}

StickWeights stick_breaking_weights(double lambda1, double lambda2, Rng& rng, double epsilon,
                                    std::optional<std::size_t> k_max) {
    const std::uint64_t seed = rng();
    Rng local(seed);
    auto w = stick_breaking_weights(lambda1, lambda2, beta_source(lambda1, lambda2, local), epsilon,
                                    k_max.value_or(default_k_max(lambda1, lambda2, epsilon)));
    w.seed = seed;
    return w;
}

TimeSeries project(const TimeSeries& series, const StickWeights& w) {
    const auto n = static_cast<Eigen::Index>(series.size());
    const Eigen::Index terms = w.weights.size();
    if (terms < 1) {
        throw Error(ErrorCode::InvalidArgument, "project: empty weight sequence");
    }
    if (n <= terms) {
        throw Error(ErrorCode::SeriesTooShort, "project: series must be longer than the weight sequence");
    }
    const Eigen::Index out_len = n - terms + 1;
    const Eigen::VectorXd& x = series.values();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(out_len);
    // Y_t = sum_i d_i x_{t-i}; output index j corresponds to t = j + K
    for (Eigen::Index i = 0; i < terms; ++i) {
        y.noalias() += w.weights(i) * x.segment(terms - 1 - i, out_len);
    }
    return series.with_values(std::move(y));
}

namespace {

TestOutcome run_marginal(const TimeSeries& s, MarginalTest t) {
    return t == MarginalTest::Epps ? epps(s) : lobato_velasco(s);
}

}  // namespace

TestOutcome rp_test(const TimeSeries& series, const RpConfig& cfg, Rng& rng) {
    if (cfg.num_projections < 1) {
        throw Error(ErrorCode::InvalidArgument, "rp_test: num_projections must be >= 1");
    }
    std::vector<double> p_values;
    std::vector<double> statistics;
    p_values.reserve(cfg.num_projections);
    for (std::size_t i = 0; i < cfg.num_projections; ++i) {
        const StickWeights w = stick_breaking_weights(cfg.lambda1, cfg.lambda2, rng, cfg.epsilon, cfg.k_max);
        const TestOutcome inner = run_marginal(project(series, w), cfg.marginal_test);
        p_values.push_back(inner.p_value);
        statistics.push_back(inner.statistic);
    }
    TestOutcome out;
    out.test_name = TestName::RandomProjection;
    out.null_hypothesis = std::string(kNullGaussianProcess);
    out.dof = 2.0;
    if (p_values.size() == 1) {
        out.p_value = p_values.front();
        out.statistic = statistics.front();
    } else {
        const FdrResult fdr = by_adjust(p_values);
        const auto best = std::min_element(fdr.adjusted.begin(), fdr.adjusted.end()) - fdr.adjusted.begin();
        out.p_value = fdr.adjusted[static_cast<std::size_t>(best)];
        out.statistic = statistics[static_cast<std::size_t>(best)];
    }
    return out;
}

RpConfig select_rp_config(double epps_p, double lv_p, double alpha) {
    RpConfig cfg;
    cfg.marginal_test = (epps_p < lv_p) ? MarginalTest::Epps : MarginalTest::LobatoVelasco;
    if (std::min(epps_p, lv_p) < alpha) {
        cfg.lambda1 = 100.0;
        cfg.lambda2 = 1.0;
    } else {
        cfg.lambda1 = 2.0;
        cfg.lambda2 = 7.0;
    }
    return cfg;
}

}  // namespace gptest
