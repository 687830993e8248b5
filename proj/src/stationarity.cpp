#include "gptest/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gptest/distributions.hpp"

namespace gptest {

namespace {

void require_nondegenerate(const TimeSeries& s, const char* who) {
    if (s.size() < 2) {
        throw Error(ErrorCode::InsufficientData, std::string(who) + ": need at least 2 samples");
    }
    if (is_constant(s.values())) {
        throw Error(ErrorCode::DegenerateSeries, std::string(who) + ": series has zero variance");
    }
}

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd se;
    Eigen::VectorXd resid;
    double sigma2 = 0.0;  // residual variance, denominator rows - cols
};

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const char* who) {
    const Eigen::Index rows = X.rows();
    const Eigen::Index cols = X.cols();
    if (rows <= cols) {
        throw Error(ErrorCode::InsufficientData, std::string(who) + ": not enough observations for the regression");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < cols) {
        throw Error(ErrorCode::DegenerateSeries, std::string(who) + ": regression design is rank deficient");
    }
    OlsFit fit;
    fit.beta = qr.solve(y);
    fit.resid = y - X * fit.beta;
    fit.sigma2 = fit.resid.squaredNorm() / static_cast<double>(rows - cols);

    // (X'X)^{-1} = P R^{-1} R^{-T} P'
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(cols, cols));
    const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
    const Eigen::MatrixXd xtx_inv = qr.colsPermutation() * inner * qr.colsPermutation().transpose();
    fit.se = (fit.sigma2 * xtx_inv.diagonal().array()).sqrt().matrix();
    return fit;
}

// Fuller's tau_mu percentiles (constant, no trend), left tail.
constexpr std::array<double, 6> kDfSampleSizes{25, 50, 100, 250, 500, 100000};
constexpr std::array<double, 4> kDfProbs{0.01, 0.025, 0.05, 0.10};
constexpr std::array<std::array<double, 4>, 6> kDfTauMu{{
    {-3.75, -3.33, -3.00, -2.63},
    {-3.58, -3.22, -2.93, -2.60},
    {-3.51, -3.17, -2.89, -2.58},
    {-3.46, -3.14, -2.88, -2.57},
    {-3.44, -3.13, -2.87, -2.57},
    {-3.43, -3.12, -2.86, -2.57},
}};

// KPSS level-stationarity critical values, right tail.
constexpr std::array<double, 4> kKpssProbs{0.10, 0.05, 0.025, 0.01};
constexpr std::array<double, 4> kKpssCrit{0.347, 0.463, 0.574, 0.739};

double lerp(double x, double x0, double x1, double y0, double y1) {
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

std::size_t default_adf_lag_order(std::size_t n) noexcept {
    if (n < 2) return 0;
    auto p = static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    // guard against cbrt rounding just below an exact cube
    while ((p + 1) * (p + 1) * (p + 1) <= n - 1) ++p;
    return p;
}

std::size_t newey_west_bandwidth(std::size_t n) noexcept {
    return static_cast<std::size_t>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double bartlett_long_run_variance(const Eigen::Ref<const Eigen::VectorXd>& resid, std::size_t bandwidth) {
    const Eigen::Index n = resid.size();
    const auto l = std::min<Eigen::Index>(static_cast<Eigen::Index>(bandwidth), n - 1);
    double lrv = resid.squaredNorm() / static_cast<double>(n);
    for (Eigen::Index j = 1; j <= l; ++j) {
        const double gamma_j = resid.head(n - j).dot(resid.tail(n - j)) / static_cast<double>(n);
        lrv += 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(l + 1)) * gamma_j;
    }
    return lrv;
}

TestOutcome ljung_box(const TimeSeries& series, std::size_t h) {
    require_nondegenerate(series, "ljung_box");
    const std::size_t n = series.size();
    if (h < 1 || h >= n) {
        throw Error(ErrorCode::LagTooLarge, "ljung_box: h must satisfy 1 <= h < n");
    }
    const Eigen::VectorXd acov = autocovariances(series.values(), static_cast<Eigen::Index>(h));
    const auto nd = static_cast<double>(n);
    double q = 0.0;
    for (std::size_t k = 1; k <= h; ++k) {
        const double rho = acov(static_cast<Eigen::Index>(k)) / acov(0);
        q += rho * rho / (nd - static_cast<double>(k));
    }
    q *= nd * (nd + 2.0);
    TestOutcome out;
    out.test_name = TestName::LjungBox;
    out.statistic = q;
    out.dof = static_cast<double>(h);
    out.p_value = chi_square_sf(q, out.dof);
    out.null_hypothesis = std::string(kNullNonStationary);
    return out;
}

TestOutcome dickey_fuller_p_value(TestName name, double tau, std::size_t n) {
    // critical values at this sample size, linear in n and clamped at the table ends
    std::array<double, 4> crit{};
    const auto nd = std::clamp(static_cast<double>(n), kDfSampleSizes.front(), kDfSampleSizes.back());
    std::size_t row = 0;
    while (row + 2 < kDfSampleSizes.size() && nd > kDfSampleSizes[row + 1]) ++row;
    for (std::size_t j = 0; j < crit.size(); ++j) {
        crit[j] = lerp(nd, kDfSampleSizes[row], kDfSampleSizes[row + 1], kDfTauMu[row][j], kDfTauMu[row + 1][j]);
    }

    TestOutcome out;
    out.test_name = name;
    out.statistic = tau;
    out.null_hypothesis = std::string(kNullNonStationary);
    if (tau < crit.front()) {
        out.p_value = kDfProbs.front();
        out.p_bound = PBound::Below;
    } else if (tau > crit.back()) {
        out.p_value = kDfProbs.back();
        out.p_bound = PBound::Above;
    } else {
        std::size_t j = 0;
        while (j + 2 < crit.size() && tau > crit[j + 1]) ++j;
        out.p_value = lerp(tau, crit[j], crit[j + 1], kDfProbs[j], kDfProbs[j + 1]);
    }
    return out;
}

TestOutcome kpss_p_value(double eta) {
    TestOutcome out;
    out.test_name = TestName::KPSS;
    out.statistic = eta;
    out.null_hypothesis = std::string(kNullStationary);
    if (eta < kKpssCrit.front()) {
        out.p_value = kKpssProbs.front();
        out.p_bound = PBound::Above;
    } else if (eta > kKpssCrit.back()) {
        out.p_value = kKpssProbs.back();
        out.p_bound = PBound::Below;
    } else {
        std::size_t j = 0;
        while (j + 2 < kKpssCrit.size() && eta > kKpssCrit[j + 1]) ++j;
        out.p_value = lerp(eta, kKpssCrit[j], kKpssCrit[j + 1], kKpssProbs[j], kKpssProbs[j + 1]);
    }
    return out;
}

TestOutcome adf(const TimeSeries& series, std::optional<std::size_t> lag_order) {
    require_nondegenerate(series, "adf");
    const std::size_t n = series.size();
    const std::size_t p = lag_order.value_or(default_adf_lag_order(n));
    if (n <= p + 2) {
        throw Error(ErrorCode::InsufficientData, "adf: need n > lag_order + 2");
    }
    const Eigen::VectorXd& y = series.values();
    const auto ni = static_cast<Eigen::Index>(n);
    const auto pi = static_cast<Eigen::Index>(p);
    const Eigen::VectorXd dy = y.tail(ni - 1) - y.head(ni - 1);  // dy(i) = y(i+1) - y(i)

    // rows t = p+1 .. n-1 (0-based in y): dy_t = y_t - y_{t-1} is dy(t-1)
    const Eigen::Index rows = ni - 1 - pi;
    Eigen::MatrixXd X(rows, 2 + pi);
    X.col(0).setOnes();
    X.col(1) = y.segment(pi, rows);
    for (Eigen::Index i = 1; i <= pi; ++i) {
        X.col(1 + i) = dy.segment(pi - i, rows);
    }
    const Eigen::VectorXd target = dy.tail(rows);
    const OlsFit fit = ols(X, target, "adf");
    const double tau = fit.beta(1) / fit.se(1);
    return dickey_fuller_p_value(TestName::ADF, tau, static_cast<std::size_t>(rows));
}

TestOutcome phillips_perron(const TimeSeries& series) {
    require_nondegenerate(series, "phillips_perron");
    const std::size_t n = series.size();
    if (n < 4) {
        throw Error(ErrorCode::InsufficientData, "phillips_perron: need at least 4 samples");
    }
    const Eigen::VectorXd& y = series.values();
    const auto t_obs = static_cast<Eigen::Index>(n) - 1;
    Eigen::MatrixXd X(t_obs, 2);
    X.col(0).setOnes();
    X.col(1) = y.head(t_obs);
    const Eigen::VectorXd target = y.tail(t_obs);
    const OlsFit fit = ols(X, target, "phillips_perron");

    const auto T = static_cast<double>(t_obs);
    const double tau = (fit.beta(1) - 1.0) / fit.se(1);
    const double gamma0 = fit.resid.squaredNorm() / T;
    const double lambda2 = bartlett_long_run_variance(fit.resid, newey_west_bandwidth(n));
    if (!(lambda2 > 0.0)) {
        throw Error(ErrorCode::NonpositiveLongRunVariance, "phillips_perron: long-run variance is not positive");
    }
    const double s = std::sqrt(fit.sigma2);
    const double lambda = std::sqrt(lambda2);
    const double z_tau = std::sqrt(gamma0 / lambda2) * tau - (lambda2 - gamma0) * T * fit.se(1) / (2.0 * lambda * s);
    return dickey_fuller_p_value(TestName::PhillipsPerron, z_tau, n);
}

TestOutcome kpss(const TimeSeries& series) {
    require_nondegenerate(series, "kpss");
    const std::size_t n = series.size();
    const Eigen::VectorXd e = series.values().array() - series.values().mean();
    const double lrv = bartlett_long_run_variance(e, newey_west_bandwidth(n));
    if (!(lrv > 0.0)) {
        throw Error(ErrorCode::NonpositiveLongRunVariance, "kpss: long-run variance is not positive");
    }
    double partial = 0.0;
    double sum_sq = 0.0;
    for (Eigen::Index t = 0; t < e.size(); ++t) {
        partial += e(t);
        sum_sq += partial * partial;
    }
    const auto nd = static_cast<double>(n);
    return kpss_p_value(sum_sq / (nd * nd * lrv));
}

StationarityPanel stationarity_panel(const TimeSeries& series, std::size_t ljung_box_h, double alpha) {
    StationarityPanel panel;
    panel.ljung_box = ljung_box(series, ljung_box_h);
    panel.adf = adf(series);
    panel.phillips_perron = phillips_perron(series);
    panel.kpss = kpss(series);
    panel.stationary = panel.adf.rejects(alpha) && panel.phillips_perron.rejects(alpha) &&
                       panel.ljung_box.rejects(alpha) && !panel.kpss.rejects(alpha);
    return panel;
}

}  // namespace gptest
