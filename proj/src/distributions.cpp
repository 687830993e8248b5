#include "gptest/distributions.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gptest/error.hpp"

namespace gptest {

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "chi_square_sf: dof must be positive");
    }
    if (std::isnan(x)) {
        throw Error(ErrorCode::InvalidArgument, "chi_square_sf: NaN statistic");
    }
    if (x <= 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw Error(ErrorCode::OutOfRange, "normal_quantile: p must lie in [0, 1]");
    }
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                             6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement; the tails are refined in the complementary form to avoid cancellation.
    const double e = (p < 0.5) ? 0.5 * std::erfc(-x / std::sqrt(2.0)) - p : -(0.5 * std::erfc(x / std::sqrt(2.0)) - (1.0 - p));
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

CountInterval binomial_acceptance(std::size_t trials, double p0, double level) {
    if (trials == 0 || !(p0 > 0.0 && p0 < 1.0) || !(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "binomial_acceptance: invalid arguments");
    }
    const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p0);
    const double tail = (1.0 - level) / 2.0;
    CountInterval out;
    // smallest lo with P(X < lo) <= tail < P(X <= lo)
    std::size_t lo = 0;
    while (lo < trials && boost::math::cdf(dist, static_cast<double>(lo)) <= tail) {
        ++lo;
    }
    std::size_t hi = trials;
    while (hi > 0 && boost::math::cdf(boost::math::complement(dist, static_cast<double>(hi - 1))) <= tail) {
        --hi;
    }
    out.lo = lo;
    out.hi = hi;
    return out;
}

RateInterval clopper_pearson(std::size_t successes, std::size_t trials, double level) {
    if (trials == 0 || successes > trials) {
        throw Error(ErrorCode::InvalidArgument, "clopper_pearson: invalid counts");
    }
    const double tail = (1.0 - level) / 2.0;
    const auto k = static_cast<double>(successes);
    const auto n = static_cast<double>(trials);
    RateInterval out;
    out.lo = successes == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1.0), tail);
    out.hi = successes == trials
                 ? 1.0
                 : boost::math::quantile(boost::math::beta_distribution<double>(k + 1.0, n - k), 1.0 - tail);
    return out;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return mix64(mix64(master) ^ h);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace gptest
