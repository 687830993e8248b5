#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gptest {

struct FdrOptions {
    bool dependent = true;  // Benjamini-Yekutieli c(m) = sum 1/j; false gives Benjamini-Hochberg c(m) = 1
    bool cap = false;       // clamp adjusted values at 1
};

struct FdrResult {
    std::vector<double> raw;
    std::vector<double> adjusted;  // input order; uncapped unless FdrOptions::cap
    std::size_t m = 0;
    double harmonic_factor = 1.0;

    /// Adjusted value of the smallest raw p-value, i.e. the minimum adjusted value.
    [[nodiscard]] double combined() const noexcept;

    friend bool operator==(const FdrResult&, const FdrResult&) = default;
};

/// c(m) = sum_{j=1}^{m} 1/j
[[nodiscard]] double harmonic_number(std::size_t m) noexcept;

/// Step-up adjustment: with p_(1) <= ... <= p_(m),
///   adjusted_(i) = min_{j >= i} p_(j) m c(m) / j,
/// returned in input order. EmptyInput / OutOfRange on bad input.
[[nodiscard]] FdrResult by_adjust(std::span<const double> raw, FdrOptions options = {});
[[nodiscard]] inline FdrResult by_adjust(const std::vector<double>& raw, FdrOptions options = {}) {
    return by_adjust(std::span<const double>(raw), options);
}

/// Rejects (H0,3 and therefore H0,4) iff the smallest adjusted value is below alpha.
[[nodiscard]] bool fdr_verdict(const FdrResult& result, double alpha = 0.05) noexcept;

}  // namespace gptest
