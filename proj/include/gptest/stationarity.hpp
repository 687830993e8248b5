#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "gptest/series.hpp"
#include "gptest/test_outcome.hpp"

namespace gptest {

/// Ljung-Box portmanteau statistic n(n+2) sum_{k=1}^{h} rho_k^2 / (n-k), chi-square(h) upper tail.
/// Oriented as a test of H0,1 (a rejection counts as evidence of stationarity).
[[nodiscard]] TestOutcome ljung_box(const TimeSeries& series, std::size_t h = 10);

/// floor((n-1)^(1/3))
[[nodiscard]] std::size_t default_adf_lag_order(std::size_t n) noexcept;
/// floor(4 (n/100)^(1/4)), shared by Phillips-Perron and KPSS.
[[nodiscard]] std::size_t newey_west_bandwidth(std::size_t n) noexcept;

/// Bartlett-weighted long-run variance gamma_0 + 2 sum_{j<=l} (1 - j/(l+1)) gamma_j of a
/// zero-mean residual vector (autocovariances with denominator n, no re-centering).
[[nodiscard]] double bartlett_long_run_variance(const Eigen::Ref<const Eigen::VectorXd>& resid, std::size_t bandwidth);

/// Augmented Dickey-Fuller, constant but no trend:
///   dy_t = a + b y_{t-1} + sum_{i=1}^{p} c_i dy_{t-i} + e_t,  tau = b / se(b).
[[nodiscard]] TestOutcome adf(const TimeSeries& series, std::optional<std::size_t> lag_order = std::nullopt);

/// Phillips-Perron Z(tau), constant but no trend, Newey-West correction.
[[nodiscard]] TestOutcome phillips_perron(const TimeSeries& series);

/// KPSS level-stationarity test with Bartlett long-run variance.
[[nodiscard]] TestOutcome kpss(const TimeSeries& series);

/// Interpolated p-value from the Dickey-Fuller tau_mu table (left tail, 1%..10%).
[[nodiscard]] TestOutcome dickey_fuller_p_value(TestName name, double tau, std::size_t n);
/// Interpolated p-value from the KPSS level table (right tail, 10%..1%).
[[nodiscard]] TestOutcome kpss_p_value(double eta);

struct StationarityPanel {
    TestOutcome ljung_box;
    TestOutcome adf;
    TestOutcome phillips_perron;
    TestOutcome kpss;
    bool stationary = false;

    friend bool operator==(const StationarityPanel&, const StationarityPanel&) = default;
};

/// Stationary iff ADF, PP and Ljung-Box reject H0,1 and KPSS does not reject H0,2, all at `alpha`.
[[nodiscard]] StationarityPanel stationarity_panel(const TimeSeries& series, std::size_t ljung_box_h = 10,
                                                   double alpha = 0.05);

}  // namespace gptest
