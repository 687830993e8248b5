#pragma once

#include <cstddef>
#include <vector>

#include "gptest/series.hpp"
#include "gptest/test_outcome.hpp"

namespace gptest {

/// Default Epps evaluation points, in units of the sample standard deviation.
inline const std::vector<double> kEppsDefaultPoints{0.8, 1.6};

/// Truncation lag of the Epps long-run covariance, floor(sqrt(n)).
[[nodiscard]] std::size_t epps_bandwidth(std::size_t n) noexcept;

/// Epps test of H0,3 for a stationary, weakly dependent series.
///
/// The series is standardized with its sample mean and standard deviation and the
/// empirical characteristic function is compared with exp(-t^2/2) at each point t
/// (real and imaginary parts, 2 coordinates per point). The long-run covariance of
/// those coordinates is the one implied by a Gaussian process with the sample
/// autocorrelations, summed up to `epps_bandwidth(n)` lags:
///
///   cos/cos(a,b): e^{-(a^2+b^2)/2} sum_k (cosh(a b rho_k) - 1)
///   sin/sin(a,b): e^{-(a^2+b^2)/2} sum_k  sinh(a b rho_k)
///
/// Estimating location and scale removes two directions, so the quadratic form is
/// projected onto the complement of the mean-derivative matrix and referred to a
/// chi-square with 2*points - 2 degrees of freedom.
///
/// Throws DegenerateSeries for constant input and SingularCovariance when the
/// covariance of the coordinates is not numerically positive definite (points
/// too numerous or too close for n).
[[nodiscard]] TestOutcome epps(const TimeSeries& series, const std::vector<double>& eval_points = kEppsDefaultPoints);

/// Gaussian-model long-run covariance of the (cos, sin) coordinates given
/// autocorrelations rho(0..L) of the standardized series, rho(0) = 1.
[[nodiscard]] Eigen::MatrixXd epps_covariance(const Eigen::Ref<const Eigen::VectorXd>& rho,
                                              const std::vector<double>& eval_points);

/// Lobato-Velasco skewness/kurtosis test of H0,3:
///
///   G = n mu3^2 / (6 F3) + n (mu4 - 3 mu2^2)^2 / (24 F4),
///   Fk = sum_{|t|<n} gamma(t) (gamma(t) + gamma(n-|t|))^{k-1},
///
/// chi-square(2). When either Fk is not positive the sum is recomputed over the
/// first floor(n^(1/3)) lags; NonpositiveLongRunVariance if that fails too.
[[nodiscard]] TestOutcome lobato_velasco(const TimeSeries& series);

}  // namespace gptest
