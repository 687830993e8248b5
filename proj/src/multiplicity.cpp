#include "gptest/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gptest/error.hpp"

namespace gptest {

double FdrResult::combined() const noexcept {
    if (adjusted.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return *std::min_element(adjusted.begin(), adjusted.end());
}

double harmonic_number(std::size_t m) noexcept {
    double c = 0.0;
    for (std::size_t j = m; j >= 1; --j) {
        c += 1.0 / static_cast<double>(j);
    }
    return c;
}

FdrResult by_adjust(std::span<const double> raw, FdrOptions options) {
    if (raw.empty()) {
        throw Error(ErrorCode::EmptyInput, "by_adjust: no p-values");
    }
    for (double p : raw) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::OutOfRange, "by_adjust: p-values must lie in [0, 1]");
        }
    }
    FdrResult out;
    out.raw.assign(raw.begin(), raw.end());
    out.m = raw.size();
    out.harmonic_factor = options.dependent ? harmonic_number(out.m) : 1.0;

    std::vector<std::size_t> order(out.m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

    const double scale = static_cast<double>(out.m) * out.harmonic_factor;
    out.adjusted.assign(out.m, 0.0);
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t rank = out.m; rank >= 1; --rank) {
        const std::size_t idx = order[rank - 1];
        running = std::min(running, raw[idx] * scale / static_cast<double>(rank));
        out.adjusted[idx] = options.cap ? std::min(running, 1.0) : running;
    }
    return out;
}

bool fdr_verdict(const FdrResult& result, double alpha) noexcept { return result.combined() < alpha; }

}  // namespace gptest
