#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gptest/error.hpp"
#include "gptest/multiplicity.hpp"

using namespace gptest;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidArgument;
}

// adjusted_i = min over all j with p_j >= p_i of p_j m c / rank(j), O(m^2)
std::vector<double> brute_force(const std::vector<double>& p, bool dependent) {
    const std::size_t m = p.size();
    double c = 0.0;
    for (std::size_t j = 1; j <= m; ++j) c += dependent ? 1.0 / j : 0.0;
    if (!dependent) c = 1.0;
    std::vector<double> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = INFINITY;
        // rank of the largest tie counts, as step-up procedures do
        for (std::size_t r = 0; r < m; ++r) {
            if (sorted[r] >= p[i]) best = std::min(best, sorted[r] * m * c / (r + 1));
        }
        out[i] = best;
    }
    return out;
}

}  // namespace

TEST_CASE("two-test combinations") {
    CHECK(harmonic_number(2) == 1.5);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0));

    const auto a = by_adjust({0.063, 0.044});
    CHECK(a.harmonic_factor == 1.5);
    CHECK(a.m == 2);
    CHECK(a.combined() == doctest::Approx(0.0945).epsilon(1e-12));

    CHECK(by_adjust({0.524, 0.044}).combined() == doctest::Approx(0.132).epsilon(1e-12));

    const auto c = by_adjust({0.821, 0.788});
    CHECK(c.combined() == doctest::Approx(1.2315).epsilon(1e-12));
    CHECK(c.adjusted[0] == doctest::Approx(1.2315).epsilon(1e-12));
    CHECK(c.adjusted[1] == doctest::Approx(1.2315).epsilon(1e-12));
    CHECK(by_adjust({0.821, 0.788}, {.dependent = true, .cap = true}).combined() == 1.0);

    // not rejected under the dependent adjustment, rejected under the independent one
    const auto d = by_adjust({0.020, 0.287});
    CHECK(d.combined() == doctest::Approx(0.06).epsilon(1e-12));
    CHECK_FALSE(fdr_verdict(d));
    CHECK(fdr_verdict(by_adjust({0.020, 0.287}, {.dependent = false})));

    CHECK_FALSE(fdr_verdict(by_adjust({1.0, 1.0})));
    CHECK(by_adjust({1.0, 1.0}).combined() == 1.5);
}

TEST_CASE("closed form for pairs") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double p1 = u(rng), p2 = u(rng);
        const auto r = by_adjust({p1, p2});
        const double expected = std::min(3.0 * std::min(p1, p2), 1.5 * std::max(p1, p2));
        CHECK(r.combined() == doctest::Approx(expected).epsilon(1e-13));
        CHECK(r.adjusted[0] >= p1);
        CHECK(r.adjusted[1] >= p2);
    }
}

TEST_CASE("matches the brute-force definition") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> size(1, 25);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<double> p(static_cast<std::size_t>(size(rng)));
        for (auto& v : p) v = rep % 5 == 0 ? std::round(u(rng) * 10) / 10 : u(rng) * u(rng);
        for (bool dep : {true, false}) {
            const auto r = by_adjust(p, {.dependent = dep});
            const auto b = brute_force(p, dep);
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(r.adjusted[i] == doctest::Approx(b[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("adjustment invariants") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> p(8);
        for (auto& v : p) v = u(rng);
        const auto r = by_adjust(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(r.adjusted[i] >= p[i]);
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (p[i] <= p[j]) CHECK(r.adjusted[i] <= r.adjusted[j]);
            }
        }
        // permutation equivariance
        std::vector<std::size_t> perm(p.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[perm[i]];
        const auto rq = by_adjust(q);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(rq.adjusted[i] == r.adjusted[perm[i]]);
        CHECK(rq.combined() == r.combined());

        // verdict is monotone in alpha
        bool seen = false;
        for (double alpha = 0.001; alpha < 1.0; alpha += 0.01) {
            const bool v = fdr_verdict(r, alpha);
            CHECK((!seen || v));
            seen = seen || v;
        }
    }
}

TEST_CASE("adjustment input errors") {
    CHECK(code_of([] { (void)by_adjust(std::vector<double>{}); }) == ErrorCode::EmptyInput);
    CHECK(code_of([] { (void)by_adjust({0.5, 1.2}); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { (void)by_adjust({-0.1}); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { (void)by_adjust({NAN, 0.1}); }) == ErrorCode::OutOfRange);
    const auto single = by_adjust({0.03});
    CHECK(single.combined() == 0.03);
    CHECK(fdr_verdict(single));
}
