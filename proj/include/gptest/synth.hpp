#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gptest/distributions.hpp"
#include "gptest/series.hpp"
#include "gptest/test_outcome.hpp"

namespace gptest {

enum class GeneratorKind { IidGaussian, GaussianARMA, CenteredExponential, CopulaMarkovGaussianMarginal };

[[nodiscard]] std::string_view to_string(GeneratorKind kind) noexcept;
[[nodiscard]] GeneratorKind generator_kind_from_string(std::string_view s);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::IidGaussian;
    std::size_t n = 1000;
    std::vector<double> ar;  // GaussianARMA
    std::vector<double> ma;  // GaussianARMA
    double theta = 2.0;      // Clayton dependence, CopulaMarkov only
    std::uint64_t seed = 0;
};

/// Largest modulus among the inverse roots of 1 - phi_1 z - ... - phi_p z^p
/// (the companion-matrix spectral radius). 0 for an empty polynomial.
[[nodiscard]] double ar_spectral_radius(const std::vector<double>& ar);

/// Discarded warm-up length: 10 * max(p + q, ceil(ln(1e-6) / ln(radius)), 10).
[[nodiscard]] std::size_t arma_burn_in(const std::vector<double>& ar, const std::vector<double>& ma);

/// x_t = sum phi_i x_{t-i} + e_t + sum theta_j e_{t-j}, e_t ~ N(0, 1).
/// NonstationaryCoefficients unless every AR inverse root lies strictly inside the unit circle.
[[nodiscard]] TimeSeries gaussian_arma(std::size_t n, const std::vector<double>& ar, const std::vector<double>& ma,
                                       Rng& rng);

/// Exp(1) - 1, iid.
[[nodiscard]] TimeSeries centered_exponential(std::size_t n, Rng& rng);

/// Clayton copula inverse of the conditional law C(v | u) at w.
[[nodiscard]] double clayton_conditional_inverse(double u, double w, double theta);

/// Stationary Markov chain U_t with Clayton(theta) transitions and uniform margins,
/// mapped through the normal quantile: every X_t is exactly N(0, 1) while the joint
/// law is not Gaussian. 100 warm-up steps are discarded.
[[nodiscard]] TimeSeries copula_markov_gaussian_marginal(std::size_t n, double theta, Rng& rng);

/// Draws from `spec` using the given generator (spec.seed is ignored here).
[[nodiscard]] TimeSeries generate(const GeneratorSpec& spec, Rng& rng);
/// Draws from `spec` with a fresh generator seeded by spec.seed.
[[nodiscard]] TimeSeries generate(const GeneratorSpec& spec);

/// Kendall tau-a by pair counting, O(n^2).
[[nodiscard]] double kendall_tau(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);

using SeriesTest = std::function<TestOutcome(const TimeSeries&, Rng&)>;

struct CalibrationResult {
    std::size_t replicates = 0;
    std::size_t rejections = 0;
    double rate = 0.0;
    RateInterval interval;  // Clopper-Pearson 99%
    std::vector<double> p_values;
};

/// Empirical rejection rate of `test` at `alpha` over `replicates` draws from `gen`.
/// Replicate r uses the seed derive_seed(gen.seed, r), so results do not depend on
/// `workers`. InvalidArgument when replicates < 100.
[[nodiscard]] CalibrationResult calibration(const SeriesTest& test, const GeneratorSpec& gen, std::size_t replicates,
                                            double alpha, std::size_t workers = 1);

/// Runs f(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& f);

}  // namespace gptest
