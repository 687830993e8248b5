#pragma once

#include <string>
#include <string_view>

namespace gptest {

enum class TestName { LjungBox, ADF, PhillipsPerron, KPSS, Epps, LobatoVelasco, RandomProjection };

/// How the reported p-value relates to the true one. Table-interpolated tests
/// only know the p-value lies beyond the edge of their table.
enum class PBound { Exact, Below, Above };

struct TestOutcome {
    TestName test_name = TestName::LjungBox;
    double statistic = 0.0;
    double p_value = 1.0;  // for Below/Above this is the table edge
    PBound p_bound = PBound::Exact;
    std::string null_hypothesis;
    double dof = 0.0;  // chi-square tests only

    /// Strict `p < alpha` on the unrounded value. A Below(c) bound rejects for every alpha > c;
    /// an Above(c) bound never rejects for alpha <= c.
    [[nodiscard]] bool rejects(double alpha) const noexcept;

    friend bool operator==(const TestOutcome&, const TestOutcome&) = default;
};

inline constexpr std::string_view kNullNonStationary = "H0,1: X is non stationary";
inline constexpr std::string_view kNullStationary = "H0,2: X is stationary";
inline constexpr std::string_view kNullGaussianMarginal = "H0,3: X_t is a Gaussian random variable";
inline constexpr std::string_view kNullGaussianProcess = "H0,4: X is a Gaussian process";

[[nodiscard]] std::string_view to_string(TestName name) noexcept;
[[nodiscard]] TestName test_name_from_string(std::string_view s);
[[nodiscard]] std::string_view to_string(PBound bound) noexcept;
[[nodiscard]] PBound p_bound_from_string(std::string_view s);

}  // namespace gptest
