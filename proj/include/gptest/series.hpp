#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gptest/error.hpp"

namespace gptest {

/// A stored record as read from disk or the network, before any cleaning.
/// Missing samples are NaN.
struct RawRecord {
    std::string station_id;
    std::vector<double> timestamps;  // seconds UTC
    std::vector<double> values;            // meters, NaN = missing
};

/// Cleaned, equally-indexed displacement series. Immutable after construction.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Throws UnorderedTimestamps unless `timestamps` is strictly increasing and
    /// sized like `values`; NaN values are rejected as well.
    TimeSeries(std::string station_id, std::vector<double> timestamps, Eigen::VectorXd values,
               std::size_t raw_length);

    /// Index-stamped series (timestamps 0..n-1), mainly for synthetic data.
    static TimeSeries from_values(Eigen::VectorXd values, std::string station_id = {});

    [[nodiscard]] const std::string& station_id() const noexcept { return station_id_; }
    [[nodiscard]] const std::vector<double>& timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t raw_length() const noexcept { return raw_length_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

    /// Same timestamps and bookkeeping, new values (used for affine maps and projections).
    [[nodiscard]] TimeSeries with_values(Eigen::VectorXd values) const;

private:
    std::string station_id_;
    std::vector<double> timestamps_;
    Eigen::VectorXd values_;
    std::size_t raw_length_ = 0;
};

/// Keeps the first `n_max` stored samples in timestamp order, missing markers included.
[[nodiscard]] RawRecord truncate_to_first(RawRecord raw, std::size_t n_max = 30000);
[[nodiscard]] TimeSeries truncate_to_first(const TimeSeries& series, std::size_t n_max = 30000);

/// Drops missing samples. Throws EmptyInput on an empty record, AllMissing if nothing survives.
/// `stored_length` is recorded as raw_length (defaults to the record's own size).
[[nodiscard]] TimeSeries clean(const RawRecord& raw, std::optional<std::size_t> stored_length = std::nullopt);
/// Re-cleaning an already clean series is the identity.
[[nodiscard]] TimeSeries clean(const TimeSeries& series);

struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;  // denominator n
    double central_moment_3 = 0.0;
    double central_moment_4 = 0.0;
};

template <typename Derived>
[[nodiscard]] MomentSet moments(const Eigen::MatrixBase<Derived>& x) {
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "moments: need at least 2 samples");
    }
    MomentSet m;
    m.mean = static_cast<double>(x.mean());
    const Eigen::ArrayXd dev = x.template cast<double>().array() - m.mean;
    const Eigen::ArrayXd dev2 = dev.square();
    m.variance = dev2.sum() / n;
    m.central_moment_3 = (dev2 * dev).sum() / n;
    m.central_moment_4 = dev2.square().sum() / n;
    return m;
}

/// True when every sample equals the first one; every test refuses such input.
template <typename Derived>
[[nodiscard]] bool is_constant(const Eigen::MatrixBase<Derived>& x) {
    return x.size() == 0 || (x.array() == x.coeff(0)).all();
}

/// gamma(k) = (1/n) sum_{t=1}^{n-k} (x_t - xbar)(x_{t+k} - xbar)
template <typename Derived>
[[nodiscard]] typename Derived::Scalar autocovariance(const Eigen::MatrixBase<Derived>& x, Eigen::Index lag) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = x.size();
    if (n < 2) {
        throw Error(ErrorCode::InsufficientData, "autocovariance: need at least 2 samples");
    }
    if (lag < 0 || lag >= n) {
        throw Error(ErrorCode::LagTooLarge, "autocovariance: lag must satisfy 0 <= k < n");
    }
    const Scalar mean = x.mean();
    const auto head = x.head(n - lag).array() - mean;
    const auto tail = x.tail(n - lag).array() - mean;
    return (head * tail).sum() / static_cast<Scalar>(n);
}

template <typename Derived>
[[nodiscard]] typename Derived::Scalar autocorrelation(const Eigen::MatrixBase<Derived>& x, Eigen::Index lag) {
    if (is_constant(x)) {
        throw Error(ErrorCode::DegenerateSeries, "autocorrelation: series has zero variance");
    }
    if (lag == 0) {
        return typename Derived::Scalar(1);
    }
    return autocovariance(x, lag) / autocovariance(x, 0);
}

/// gamma(0..max_lag) by direct summation, O(n * max_lag).
template <typename Derived>
[[nodiscard]] Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> autocovariances(
    const Eigen::MatrixBase<Derived>& x, Eigen::Index max_lag) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = x.size();
    if (n < 2) {
        throw Error(ErrorCode::InsufficientData, "autocovariances: need at least 2 samples");
    }
    if (max_lag < 0 || max_lag >= n) {
        throw Error(ErrorCode::LagTooLarge, "autocovariances: lag must satisfy 0 <= k < n");
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dev = x.array() - x.mean();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(max_lag + 1);
    for (Eigen::Index k = 0; k <= max_lag; ++k) {
        out(k) = dev.head(n - k).dot(dev.tail(n - k)) / static_cast<Scalar>(n);
    }
    return out;
}

/// gamma(0..n-1) via zero-padded FFT, O(n log n).
[[nodiscard]] Eigen::VectorXd autocovariances_fft(const Eigen::Ref<const Eigen::VectorXd>& x);

[[nodiscard]] inline MomentSet moments(const TimeSeries& s) { return moments(s.values()); }
[[nodiscard]] inline double autocovariance(const TimeSeries& s, Eigen::Index lag) {
    return autocovariance(s.values(), lag);
}
[[nodiscard]] inline double autocorrelation(const TimeSeries& s, Eigen::Index lag) {
    return autocorrelation(s.values(), lag);
}

/// Affine image a*x + b, keeping timestamps.
[[nodiscard]] TimeSeries affine(const TimeSeries& s, double a, double b);

}  // namespace gptest
