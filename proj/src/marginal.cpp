#include "gptest/marginal.hpp"

#include <cmath>
#include <string>

#include "gptest/distributions.hpp"

namespace gptest {

std::size_t epps_bandwidth(std::size_t n) noexcept {
    return static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
}

Eigen::MatrixXd epps_covariance(const Eigen::Ref<const Eigen::VectorXd>& rho, const std::vector<double>& eval_points) {
    const auto pts = static_cast<Eigen::Index>(eval_points.size());
    const Eigen::Index lags = rho.size() - 1;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * pts, 2 * pts);
    for (Eigen::Index i = 0; i < pts; ++i) {
        for (Eigen::Index j = 0; j < pts; ++j) {
            const double ti = eval_points[static_cast<std::size_t>(i)];
            const double tj = eval_points[static_cast<std::size_t>(j)];
            const double ab = ti * tj;
            double c = std::cosh(ab) - 1.0;
            double s = std::sinh(ab);
            for (Eigen::Index k = 1; k <= lags; ++k) {
                c += 2.0 * (std::cosh(ab * rho(k)) - 1.0);
                s += 2.0 * std::sinh(ab * rho(k));
            }
            const double damp = std::exp(-(ti * ti + tj * tj) / 2.0);
            omega(i, j) = damp * c;
            omega(pts + i, pts + j) = damp * s;
        }
    }
    return omega;
}

TestOutcome epps(const TimeSeries& series, const std::vector<double>& eval_points) {
    const std::size_t n = series.size();
    if (n < 3) {
        throw Error(ErrorCode::InsufficientData, "epps: need at least 3 samples");
    }
    if (is_constant(series.values())) {
        throw Error(ErrorCode::DegenerateSeries, "epps: series has zero variance");
    }
    if (eval_points.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "epps: need at least two evaluation points");
    }
    for (double t : eval_points) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw Error(ErrorCode::InvalidArgument, "epps: evaluation points must be positive");
        }
    }

    const Eigen::Index pts = static_cast<Eigen::Index>(eval_points.size());
    const Eigen::Index dim = 2 * pts;
    const auto lags = std::min<Eigen::Index>(static_cast<Eigen::Index>(epps_bandwidth(n)),
                                             static_cast<Eigen::Index>(n) - 1);
    const Eigen::VectorXd acov = autocovariances(series.values(), lags);
    const Eigen::ArrayXd rho = acov.array() / acov(0);
    const Eigen::ArrayXd z = (series.values().array() - series.values().mean()) / std::sqrt(acov(0));
    const Eigen::Map<const Eigen::ArrayXd> tau(eval_points.data(), pts);

    // coordinates ordered (cos t_1..t_p, sin t_1..t_p)
    Eigen::VectorXd g(dim);
    for (Eigen::Index i = 0; i < pts; ++i) {
        g(i) = (tau(i) * z).cos().mean() - std::exp(-tau(i) * tau(i) / 2.0);
        g(pts + i) = (tau(i) * z).sin().mean();
    }

    const Eigen::MatrixXd omega = epps_covariance(rho.matrix(), eval_points);

    // d E[g] / d(location, scale) at the standard normal
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim, 2);
    for (Eigen::Index i = 0; i < pts; ++i) {
        const double phi = std::exp(-tau(i) * tau(i) / 2.0);
        D(i, 1) = tau(i) * tau(i) * phi;
        D(pts + i, 0) = -tau(i) * phi;
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(omega);
    const double max_ev = eig.eigenvalues().maxCoeff();
    if (!(eig.eigenvalues().minCoeff() > 1e-12 * max_ev) || !(max_ev > 0.0)) {
        throw Error(ErrorCode::SingularCovariance,
                    "epps: characteristic-function covariance is singular; use fewer or more separated points");
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(omega);
    const Eigen::VectorXd w = ldlt.solve(g);
    const Eigen::MatrixXd WD = ldlt.solve(D);
    const Eigen::Matrix2d info = D.transpose() * WD;
    const Eigen::Vector2d proj = info.ldlt().solve(D.transpose() * w);
    const double quad = g.dot(w) - (D.transpose() * w).dot(proj);

    TestOutcome out;
    out.test_name = TestName::Epps;
    out.statistic = std::max(0.0, static_cast<double>(n) * quad);
    out.dof = static_cast<double>(dim - 2);
    out.p_value = chi_square_sf(out.statistic, out.dof);
    out.null_hypothesis = std::string(kNullGaussianMarginal);
    return out;
}

namespace {

// sum_{|t|<n} gamma(t) (gamma(t) + gamma(n-|t|))^{k-1}, restricted to |t| <= max_lag; gamma(n) = 0
double lv_long_run(const Eigen::VectorXd& gamma, int k, Eigen::Index max_lag) {
    const Eigen::Index n = gamma.size();
    auto term = [&](Eigen::Index t) {
        const double wrap = (t == 0) ? 0.0 : gamma(n - t);
        return gamma(t) * std::pow(gamma(t) + wrap, k - 1);
    };
    double total = term(0);
    for (Eigen::Index t = 1; t <= max_lag; ++t) {
        total += 2.0 * term(t);
    }
    return total;
}

}  // namespace

TestOutcome lobato_velasco(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 3) {
        throw Error(ErrorCode::InsufficientData, "lobato_velasco: need at least 3 samples");
    }
    if (is_constant(series.values())) {
        throw Error(ErrorCode::DegenerateSeries, "lobato_velasco: series has zero variance");
    }
    const MomentSet m = moments(series.values());
    const Eigen::VectorXd gamma = autocovariances_fft(series.values());

    const auto full = static_cast<Eigen::Index>(n) - 1;
    double f3 = lv_long_run(gamma, 3, full);
    double f4 = lv_long_run(gamma, 4, full);
    if (!(f3 > 0.0) || !(f4 > 0.0)) {
        const auto lags = std::min<Eigen::Index>(full, static_cast<Eigen::Index>(std::cbrt(static_cast<double>(n))));
        f3 = lv_long_run(gamma, 3, lags);
        f4 = lv_long_run(gamma, 4, lags);
        if (!(f3 > 0.0) || !(f4 > 0.0)) {
            throw Error(ErrorCode::NonpositiveLongRunVariance,
                        "lobato_velasco: moment long-run variance is not positive");
        }
    }
    const auto nd = static_cast<double>(n);
    const double excess = m.central_moment_4 - 3.0 * m.variance * m.variance;
    TestOutcome out;
    out.test_name = TestName::LobatoVelasco;
    out.statistic = nd * m.central_moment_3 * m.central_moment_3 / (6.0 * f3) + nd * excess * excess / (24.0 * f4);
    out.dof = 2.0;
    out.p_value = chi_square_sf(out.statistic, out.dof);
    out.null_hypothesis = std::string(kNullGaussianMarginal);
    return out;
}

}  // namespace gptest
