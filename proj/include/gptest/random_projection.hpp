#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "gptest/distributions.hpp"
#include "gptest/series.hpp"
#include "gptest/test_outcome.hpp"

namespace gptest {

enum class MarginalTest { Epps, LobatoVelasco };

[[nodiscard]] std::string_view to_string(MarginalTest t) noexcept;
[[nodiscard]] MarginalTest marginal_test_from_string(std::string_view s);

/// Truncated stick-breaking weights d_0..d_K of a Dirichlet process draw.
struct StickWeights {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Eigen::VectorXd weights;
    double residual_mass = 1.0;  // prod_k (1 - b_k) = 1 - sum(weights)
    std::uint64_t seed = 0;
};

/// Source of Beta(lambda1, lambda2) fractions; tests substitute a stub.
using BetaSource = std::function<double()>;

/// Beta(lambda1, lambda2) sampler as a ratio of gamma variates.
[[nodiscard]] BetaSource beta_source(double lambda1, double lambda2, Rng& rng);

/// max(50, ceil(10 (1 + lambda2/lambda1)), ceil(3 ln(eps) / E[ln(1 - B)])), with
/// E[ln(1 - B)] = digamma(lambda2) - digamma(lambda1 + lambda2).
[[nodiscard]] std::size_t default_k_max(double lambda1, double lambda2, double epsilon);

/// d_0 = b_0, d_k = (1 - sum_{i<k} d_i) b_k, stopping at the first K whose residual
/// mass falls below `epsilon`. TruncationFailure if the residual is still >= epsilon
/// after k_max weights.
[[nodiscard]] StickWeights stick_breaking_weights(double lambda1, double lambda2, const BetaSource& draw,
                                                  double epsilon, std::size_t k_max);
[[nodiscard]] StickWeights stick_breaking_weights(double lambda1, double lambda2, Rng& rng, double epsilon = 1e-10,
                                                  std::optional<std::size_t> k_max = std::nullopt);

/// Y_t = sum_{i=0}^{K} d_i x_{t-i} for the n-K samples whose window is fully observed.
/// SeriesTooShort unless n > K + 1.
[[nodiscard]] TimeSeries project(const TimeSeries& series, const StickWeights& w);

struct RpConfig {
    double lambda1 = 100.0;
    double lambda2 = 1.0;
    MarginalTest marginal_test = MarginalTest::LobatoVelasco;
    double epsilon = 1e-10;
    std::optional<std::size_t> k_max;  // default_k_max when unset
    std::size_t num_projections = 1;

    friend bool operator==(const RpConfig&, const RpConfig&) = default;
};

/// Random projection test of H0,4. One projection returns the marginal test's
/// p-value on the projected series; several are combined with the dependent-case
/// FDR adjustment and the smallest adjusted value is reported.
[[nodiscard]] TestOutcome rp_test(const TimeSeries& series, const RpConfig& cfg, Rng& rng);

/// Uses the marginal test that already rejected at `alpha` with (100, 1); otherwise
/// (2, 7) with the test of smaller p-value. Ties go to Lobato-Velasco.
[[nodiscard]] RpConfig select_rp_config(double epps_p, double lv_p, double alpha = 0.05);

}  // namespace gptest
