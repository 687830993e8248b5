#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace gptest {

using Rng = std::mt19937_64;

/// Upper tail P(X > x) of the chi-square law with `dof` degrees of freedom.
[[nodiscard]] double chi_square_sf(double x, double dof);

[[nodiscard]] double normal_cdf(double x);

/// Inverse standard normal CDF. Rational approximation (Acklam's coefficients)
/// followed by one Halley step, |error| < 1e-9 on (0, 1).
[[nodiscard]] double normal_quantile(double p);

/// Two-sided exact binomial acceptance region for rejection counts under
/// Bin(trials, p0): [lo, hi] with P(X < lo) <= (1-level)/2 and P(X > hi) <= (1-level)/2.
struct CountInterval {
    std::size_t lo = 0;
    std::size_t hi = 0;
};
[[nodiscard]] CountInterval binomial_acceptance(std::size_t trials, double p0, double level = 0.99);

/// Clopper-Pearson interval for a binomial proportion.
struct RateInterval {
    double lo = 0.0;
    double hi = 1.0;
};
[[nodiscard]] RateInterval clopper_pearson(std::size_t successes, std::size_t trials, double level = 0.99);

/// splitmix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable per-task seed from a master seed and a label (FNV-1a of the label, mixed).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace gptest
