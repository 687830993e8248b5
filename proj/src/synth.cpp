#include "gptest/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

namespace gptest {

std::string_view to_string(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::IidGaussian: return "iid";
        case GeneratorKind::GaussianARMA: return "arma";
        case GeneratorKind::CenteredExponential: return "exp";
        case GeneratorKind::CopulaMarkovGaussianMarginal: return "copula";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_string(std::string_view s) {
    for (auto k : {GeneratorKind::IidGaussian, GeneratorKind::GaussianARMA, GeneratorKind::CenteredExponential,
                   GeneratorKind::CopulaMarkovGaussianMarginal}) {
        if (to_string(k) == s) return k;
    }
    throw Error(ErrorCode::ParseError, "unknown generator kind '" + std::string(s) + "'");
}

double ar_spectral_radius(const std::vector<double>& ar) {
    const auto p = static_cast<Eigen::Index>(ar.size());
    if (p == 0) {
        return 0.0;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    companion.row(0) = Eigen::Map<const Eigen::RowVectorXd>(ar.data(), p);
    if (p > 1) {
        companion.bottomLeftCorner(p - 1, p - 1).setIdentity();
    }
    return Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues().cwiseAbs().maxCoeff();
}

std::size_t arma_burn_in(const std::vector<double>& ar, const std::vector<double>& ma) {
    const double radius = ar_spectral_radius(ar);
    double memory = static_cast<double>(std::max<std::size_t>(ar.size() + ma.size(), 10));
    if (radius > 0.0 && radius < 1.0) {
        memory = std::max(memory, std::ceil(std::log(1e-6) / std::log(radius)));
    }
    return static_cast<std::size_t>(10.0 * memory);
}

TimeSeries gaussian_arma(std::size_t n, const std::vector<double>& ar, const std::vector<double>& ma, Rng& rng) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "gaussian_arma: n must be >= 1");
    }
    if (!(ar_spectral_radius(ar) < 1.0)) {
        throw Error(ErrorCode::NonstationaryCoefficients, "gaussian_arma: AR polynomial has a root on or inside the unit circle");
    }
    const std::size_t burn = arma_burn_in(ar, ma);
    const std::size_t total = n + burn;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> e(total);
    std::vector<double> x(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        e[t] = normal(rng);
        double v = e[t];
        for (std::size_t j = 0; j < ma.size() && j < t; ++j) v += ma[j] * e[t - 1 - j];
        for (std::size_t i = 0; i < ar.size() && i < t; ++i) v += ar[i] * x[t - 1 - i];
        x[t] = v;
    }
    Eigen::VectorXd out = Eigen::Map<const Eigen::VectorXd>(x.data() + burn, static_cast<Eigen::Index>(n));
    return TimeSeries::from_values(std::move(out));
}

TimeSeries centered_exponential(std::size_t n, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    Eigen::VectorXd out(static_cast<Eigen::Index>(n));
    for (auto& v : out) v = expo(rng) - 1.0;
    return TimeSeries::from_values(std::move(out));
}

double clayton_conditional_inverse(double u, double w, double theta) {
    // C(v | u) = u^{-theta-1} (u^{-theta} + v^{-theta} - 1)^{-1/theta - 1}
    return std::pow(std::pow(u, -theta) * (std::pow(w, -theta / (1.0 + theta)) - 1.0) + 1.0, -1.0 / theta);
}

TimeSeries copula_markov_gaussian_marginal(std::size_t n, double theta, Rng& rng) {
    if (!(theta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "copula_markov_gaussian_marginal: theta must be positive");
    }
    constexpr std::size_t burn = 100;
    // open interval keeps the quantile finite
    auto uniform = [&rng] {
        double u = 0.0;
        do {
            u = std::generate_canonical<double, 53>(rng);
        } while (u <= 0.0 || u >= 1.0);
        return u;
    };
    double u = uniform();
    Eigen::VectorXd out(static_cast<Eigen::Index>(n));
    for (std::size_t t = 0; t < n + burn; ++t) {
        u = std::clamp(clayton_conditional_inverse(u, uniform(), theta), 1e-300, 1.0 - 1e-16);
        if (t >= burn) {
            out(static_cast<Eigen::Index>(t - burn)) = normal_quantile(u);
        }
    }
    return TimeSeries::from_values(std::move(out));
}

TimeSeries generate(const GeneratorSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case GeneratorKind::IidGaussian: return gaussian_arma(spec.n, {}, {}, rng);
        case GeneratorKind::GaussianARMA: return gaussian_arma(spec.n, spec.ar, spec.ma, rng);
        case GeneratorKind::CenteredExponential: return centered_exponential(spec.n, rng);
        case GeneratorKind::CopulaMarkovGaussianMarginal: return copula_markov_gaussian_marginal(spec.n, spec.theta, rng);
    }
    throw Error(ErrorCode::InvalidArgument, "generate: unknown kind");
}

TimeSeries generate(const GeneratorSpec& spec) {
    Rng rng(spec.seed);
    return generate(spec, rng);
}

double kendall_tau(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index n = x.size();
    if (n != y.size() || n < 2) {
        throw Error(ErrorCode::InvalidArgument, "kendall_tau: need two equal-length samples of size >= 2");
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double prod = (x(i) - x(j)) * (y(i) - y(j));
            s += (prod > 0.0) - (prod < 0.0);
        }
    }
    return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& f) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

CalibrationResult calibration(const SeriesTest& test, const GeneratorSpec& gen, std::size_t replicates, double alpha,
                              std::size_t workers) {
    if (replicates < 100) {
        throw Error(ErrorCode::InvalidArgument, "calibration: need at least 100 replicates");
    }
    CalibrationResult out;
    out.replicates = replicates;
    out.p_values.assign(replicates, 1.0);
    std::vector<char> rejected(replicates, 0);
    parallel_for(replicates, workers, [&](std::size_t r) {
        Rng rng(derive_seed(gen.seed, static_cast<std::uint64_t>(r)));
        const TimeSeries series = generate(gen, rng);
        const TestOutcome outcome = test(series, rng);
        out.p_values[r] = outcome.p_value;
        rejected[r] = outcome.rejects(alpha) ? 1 : 0;
    });
    out.rejections = static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), 1));
    out.rate = static_cast<double>(out.rejections) / static_cast<double>(replicates);
    out.interval = clopper_pearson(out.rejections, replicates);
    return out;
}

}  // namespace gptest
