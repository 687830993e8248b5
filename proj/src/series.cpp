#include "gptest/series.hpp"

#include <algorithm>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

namespace gptest {

TimeSeries::TimeSeries(std::string station_id, std::vector<double> timestamps, Eigen::VectorXd values,
                       std::size_t raw_length)
    : station_id_(std::move(station_id)),
      timestamps_(std::move(timestamps)),
      values_(std::move(values)),
      raw_length_(raw_length) {
    if (timestamps_.size() != size()) {
        throw Error(ErrorCode::InvalidArgument, "TimeSeries: timestamps and values differ in length");
    }
    if (std::adjacent_find(timestamps_.begin(), timestamps_.end(), std::greater_equal<>{}) != timestamps_.end()) {
        throw Error(ErrorCode::UnorderedTimestamps, "TimeSeries: timestamps must be strictly increasing");
    }
    if (values_.array().isNaN().any()) {
        throw Error(ErrorCode::InvalidArgument, "TimeSeries: missing values must be removed by clean()");
    }
}

TimeSeries TimeSeries::from_values(Eigen::VectorXd values, std::string station_id) {
    std::vector<double> ts(static_cast<std::size_t>(values.size()));
    std::iota(ts.begin(), ts.end(), 0.0);
    const auto n = ts.size();
    return TimeSeries(std::move(station_id), std::move(ts), std::move(values), n);
}

TimeSeries TimeSeries::with_values(Eigen::VectorXd values) const {
    std::vector<double> ts(timestamps_.end() - values.size(), timestamps_.end());
    return TimeSeries(station_id_, std::move(ts), std::move(values), raw_length_);
}

RawRecord truncate_to_first(RawRecord raw, std::size_t n_max) {
    if (n_max < 1) {
        throw Error(ErrorCode::InvalidArgument, "truncate_to_first: n_max must be >= 1");
    }
    if (raw.timestamps.size() != raw.values.size()) {
        throw Error(ErrorCode::InvalidArgument, "truncate_to_first: timestamps and values differ in length");
    }
    if (!std::is_sorted(raw.timestamps.begin(), raw.timestamps.end())) {
        std::vector<std::size_t> order(raw.timestamps.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return raw.timestamps[a] < raw.timestamps[b]; });
        RawRecord sorted{raw.station_id, {}, {}};
        sorted.timestamps.reserve(order.size());
        sorted.values.reserve(order.size());
        for (auto i : order) {
            sorted.timestamps.push_back(raw.timestamps[i]);
            sorted.values.push_back(raw.values[i]);
        }
        raw = std::move(sorted);
    }
    if (raw.values.size() > n_max) {
        raw.timestamps.resize(n_max);
        raw.values.resize(n_max);
    }
    return raw;
}

TimeSeries truncate_to_first(const TimeSeries& series, std::size_t n_max) {
    if (n_max < 1) {
        throw Error(ErrorCode::InvalidArgument, "truncate_to_first: n_max must be >= 1");
    }
    if (series.size() <= n_max) {
        return series;
    }
    const auto keep = static_cast<Eigen::Index>(n_max);
    std::vector<double> ts(series.timestamps().begin(), series.timestamps().begin() + keep);
    return TimeSeries(series.station_id(), std::move(ts), series.values().head(keep), series.raw_length());
}

TimeSeries clean(const RawRecord& raw, std::optional<std::size_t> stored_length) {
    if (raw.values.empty()) {
        throw Error(ErrorCode::EmptyInput, "clean: empty record");
    }
    if (raw.timestamps.size() != raw.values.size()) {
        throw Error(ErrorCode::InvalidArgument, "clean: timestamps and values differ in length");
    }
    std::vector<double> ts;
    std::vector<double> vals;
    ts.reserve(raw.values.size());
    vals.reserve(raw.values.size());
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        if (!std::isnan(raw.values[i])) {
            ts.push_back(raw.timestamps[i]);
            vals.push_back(raw.values[i]);
        }
    }
    if (vals.empty()) {
        throw Error(ErrorCode::AllMissing, "clean: every sample of station '" + raw.station_id + "' is missing");
    }
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    return TimeSeries(raw.station_id, std::move(ts), std::move(v), stored_length.value_or(raw.values.size()));
}

TimeSeries clean(const TimeSeries& series) { return series; }

Eigen::VectorXd autocovariances_fft(const Eigen::Ref<const Eigen::VectorXd>& x) {
    const Eigen::Index n = x.size();
    if (n < 2) {
        throw Error(ErrorCode::InsufficientData, "autocovariances_fft: need at least 2 samples");
    }
    Eigen::Index padded = 1;
    while (padded < 2 * n) {
        padded <<= 1;
    }
    std::vector<double> buf(static_cast<std::size_t>(padded), 0.0);
    const double mean = x.mean();
    for (Eigen::Index i = 0; i < n; ++i) {
        buf[static_cast<std::size_t>(i)] = x(i) - mean;
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, buf);
    for (auto& c : spec) {
        c = std::norm(c);
    }
    std::vector<double> acov;
    fft.inv(acov, spec);
    Eigen::VectorXd out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out(k) = acov[static_cast<std::size_t>(k)] / static_cast<double>(n);
    }
    return out;
}

TimeSeries affine(const TimeSeries& s, double a, double b) {
    Eigen::VectorXd v = (a * s.values().array() + b).matrix();
    return s.with_values(std::move(v));
}

}  // namespace gptest
