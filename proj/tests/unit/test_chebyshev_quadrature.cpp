#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcub/chebyshev_quadrature.hpp"
#include "pcub/errors.hpp"
#include "pcub/random.hpp"

using namespace pcub;

namespace {

std::vector<int> ints(std::initializer_list<int> v) { return v; }

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Two-node rule for Lebesgue measure on [1, 2] exact on t^0, t^2, t^-1, t^1. Weights
// follow linearly from the t^0 and t^1 equations; t2 solves the t^2 equation for
// fixed t1 by bisection, and t1 solves the t^-1 equation by an outer bisection.
struct TwoNode {
    double t1, t2, w1, w2;
};

TwoNode brute_force_rule() {
    auto weights = [](double t1, double t2) {
        const double w2 = (1.5 - t1) / (t2 - t1);
        return std::pair{1.0 - w2, w2};
    };
    auto t2_of = [&](double t1) {
        return bisect(
            [&](double t2) {
                const auto [w1, w2] = weights(t1, t2);
                return w1 * t1 * t1 + w2 * t2 * t2 - 7.0 / 3.0;
            },
            1.5 + 1e-12, 2.0);
    };
    auto g = [&](double t1) {
        const double t2 = t2_of(t1);
        const auto [w1, w2] = weights(t1, t2);
        return w1 / t1 + w2 / t2 - std::log(2.0);
    };
    // Scan for the sign change, then bisect.
    double lo = 1.0 + 1e-9, prev = g(lo);
    for (int i = 1; i <= 400; ++i) {
        const double x = 1.0 + 0.5 * i / 400.0 - 1e-9;
        const double v = g(x);
        if ((v < 0) != (prev < 0)) {
            const double t1 = bisect(g, lo, x);
            const double t2 = t2_of(t1);
            const auto [w1, w2] = weights(t1, t2);
            return {t1, t2, w1, w2};
        }
        lo = x;
        prev = v;
    }
    throw std::runtime_error("no sign change");
}

double relative_exactness(const QuadratureRule& rule, const RadialMeasure& mu, const RadialBasis& basis) {
    const auto m = moments(mu, basis.exponents);
    double worst = 0.0;
    for (std::size_t e = 0; e < basis.size(); ++e) {
        long double s = 0;
        for (std::size_t j = 0; j < rule.size(); ++j)
            s += static_cast<long double>(rule.weights[j]) * std::pow(static_cast<long double>(rule.nodes[j]), basis.exponents[e]);
        worst = std::max(worst, static_cast<double>(std::abs(s - m.values[e]) / (1.0 + std::abs(m.values[e]))));
    }
    return worst;
}

} // namespace

TEST_SUITE("chebyshev_quadrature") {

TEST_CASE("build_basis examples") {
    CHECK(build_basis(0, 3, 2).exponents == ints({0, 2, -1, 1}));
    CHECK(build_basis(1, 3, 1).exponents == ints({1, -2}));
    CHECK(build_basis(2, 5, 2).exponents == ints({2, 4, -5, -3}));
    CHECK(build_basis(3, 3, 4).size() == 8);
    CHECK_THROWS_AS(build_basis(0, 2, 1), DomainError);
    CHECK_THROWS_AS(build_basis(0, 3, 0), DomainError);
    CHECK_THROWS_AS(build_basis(-1, 3, 1), DomainError);
}

TEST_CASE("moments examples") {
    const auto leb = RadialMeasure::lebesgue(1.0, 2.0);
    const auto m = moments(leb, ints({0, 2, -1, 1}));
    CHECK(m.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.values[1] == doctest::Approx(7.0 / 3).epsilon(1e-15));
    CHECK(m.values[2] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(m.values[3] == doctest::Approx(1.5).epsilon(1e-15));

    const RadialMeasure atom(1.0, 2.0, {{1.5, 2.0}});
    CHECK(moments(atom, ints({2})).values[0] == doctest::Approx(4.5));

    const RadialMeasure mixed(1.0, 2.0, {{1.5, 2.0}}, {1.0});
    CHECK(moments(mixed, ints({-1})).values[0] == doctest::Approx(2.0 / 1.5 + std::log(2.0)));

    // Polynomial density paired with negative powers, including the log terms.
    const RadialMeasure poly(1.0, 3.0, {}, {0.5, -0.25, 0.125});
    for (int e = -6; e <= 6; ++e) {
        // Composite Simpson on a fine grid as an independent check.
        const int n = 20000;
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = 1.0 + 2.0 * i / n;
            const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
            s += w * std::pow(t, e) * (0.5 - 0.25 * t + 0.125 * t * t);
        }
        s *= 2.0 / n / 3.0;
        CHECK(moments(poly, ints({e})).values[0] == doctest::Approx(s).epsilon(1e-12));
    }
    CHECK_THROWS_AS(moments(RadialMeasure(0.0, 1.0, {{0.5, 1.0}}), ints({-1})), DomainError);
}

TEST_CASE("RadialMeasure validity") {
    CHECK(RadialMeasure(1.0, 2.0, {{1.2, 1.0}}).violations().empty());
    CHECK_FALSE(RadialMeasure(1.0, 2.0, {{1.2, -1.0}}).violations().empty());
    CHECK_FALSE(RadialMeasure(1.0, 2.0, {{2.5, 1.0}}).violations().empty());
    CHECK_FALSE(RadialMeasure(1.0, 2.0, {}, {-0.1}).violations().empty());
    // r^2 - 3r + 2 vanishes at both endpoints and is negative inside.
    CHECK_FALSE(RadialMeasure(1.0, 2.0, {}, {2.0, -3.0, 1.0}).violations().empty());
    CHECK(RadialMeasure(1.0, 2.0, {}, {0.0, 0.0, 1.0}).violations().empty());
    CHECK(RadialMeasure(1.0, 2.0).is_zero());
    CHECK(RadialMeasure(1.0, 2.0, {{1.2, 1.0}, {1.2, 2.0}, {1.7, 0.0}}).support_size() == 1);
}

TEST_CASE("Gauss rule for Lebesgue measure matches the brute-force oracle") {
    const auto leb = RadialMeasure::lebesgue(1.0, 2.0);
    const auto basis = build_basis(0, 3, 2);
    const auto rule = gauss_rule(leb, basis);
    REQUIRE(rule.size() == 2);
    const auto oracle = brute_force_rule();
    CHECK(rule.nodes[0] == doctest::Approx(oracle.t1).epsilon(1e-10));
    CHECK(rule.nodes[1] == doctest::Approx(oracle.t2).epsilon(1e-10));
    CHECK(rule.weights[0] == doctest::Approx(oracle.w1).epsilon(1e-10));
    CHECK(rule.weights[1] == doctest::Approx(oracle.w2).epsilon(1e-10));
    for (double r : moment_residuals(rule, leb, basis.exponents)) CHECK(r <= 1e-10);
}

TEST_CASE("degenerate measures") {
    const RadialMeasure one(1.0, 2.0, {{1.5, 1.0}});
    try {
        gauss_rule(one, build_basis(0, 3, 2));
        FAIL("expected DegenerateMeasure");
    } catch (const DegenerateMeasure& e) {
        CHECK(e.support_size() == 1);
    }
    CHECK_THROWS_AS(gauss_rule(RadialMeasure(1.0, 2.0), build_basis(0, 3, 2)), DegenerateMeasure);
    CHECK_THROWS_AS(gauss_rule(RadialMeasure::lebesgue(1.0, 2.0), build_basis(0, 3, 3)), DomainError);
}

TEST_CASE("exactly 2N atoms are returned as the rule") {
    const RadialMeasure atoms(1.0, 2.0, {{1.9, 0.3}, {1.1, 0.5}, {1.4, 0.25}, {1.6, 1.0}});
    const auto rule = gauss_rule(atoms, build_basis(2, 3, 4));
    const double t[] = {1.1, 1.4, 1.6, 1.9}, w[] = {0.5, 0.25, 1.0, 0.3};
    REQUIRE(rule.size() == 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(rule.nodes[j] - t[j]) <= 1e-12);
        CHECK(std::abs(rule.weights[j] - w[j]) <= 1e-12);
    }
    for (double r : moment_residuals(rule, atoms, build_basis(2, 3, 4).exponents)) CHECK(r <= 1e-12);
}

TEST_CASE("exactness, positivity and containment over random measures") {
    Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        const auto mu = random_radial_measure(rng, 1.0, 2.0);
        for (int k = 0; k <= 4; ++k)
            for (int N = 1; N <= 4; ++N) {
                const auto basis = build_basis(k, 3, 2 * N);
                const auto rule = gauss_rule(mu, basis);
                REQUIRE(rule.size() == static_cast<std::size_t>(2 * N));
                CHECK(relative_exactness(rule, mu, basis) <= 1e-10);
                for (std::size_t j = 0; j < rule.size(); ++j) {
                    CHECK(rule.weights[j] >= 0.0);
                    CHECK(rule.nodes[j] >= 1.0 - 1e-12);
                    CHECK(rule.nodes[j] <= 2.0 + 1e-12);
                    if (j > 0) CHECK(rule.nodes[j - 1] < rule.nodes[j]);
                }
            }
    }
}

TEST_CASE("d = 5 and pure densities") {
    const RadialMeasure dens(0.5, 3.0, {}, {1.0, 0.0, 2.0});
    for (int N = 1; N <= 3; ++N) {
        const auto basis = build_basis(1, 5, 2 * N);
        CHECK(relative_exactness(gauss_rule(dens, basis), dens, basis) <= 1e-10);
    }
}

TEST_CASE("scale covariance") {
    Rng rng(32);
    const auto mu = random_radial_measure(rng, 1.0, 2.0);
    const auto basis = build_basis(1, 3, 6);
    const auto r1 = gauss_rule(mu, basis);
    const auto r2 = gauss_rule(mu.scaled(2.5), basis);
    for (std::size_t j = 0; j < r1.size(); ++j) {
        CHECK(std::abs(r2.nodes[j] - r1.nodes[j]) <= 1e-10);
        CHECK(std::abs(r2.weights[j] - 2.5 * r1.weights[j]) <= 1e-10);
    }
}

TEST_CASE("solver failure is reported with its residual") {
    GaussOptions opt;
    opt.max_newton_iterations = 1;
    opt.continuation_steps = 1;
    opt.max_restarts = 0;
    try {
        gauss_rule(RadialMeasure(1.0, 2.0, {{1.01, 5.0}}, {0.01}), build_basis(4, 3, 8), opt);
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("apply_rule") {
    const QuadratureRule r{{1.0, 2.0}, {1.0, 1.0}};
    const std::vector<double> sq{1.0, 4.0};
    CHECK(apply_rule(r, sq) == 5.0);
    const QuadratureRule z{{1.0, 2.0}, {0.0, 0.0}};
    CHECK(apply_rule(z, sq) == 0.0);
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(apply_rule(r, bad), DomainError);
    const std::vector<Complex> c{{1, 1}, {0, 2}};
    CHECK(apply_rule(r, c) == Complex(1, 3));
}

TEST_CASE("interpolation") {
    const auto basis = build_basis(1, 3, 3);
    const std::vector<double> nodes{1.05, 1.2, 1.4, 1.55, 1.8, 1.97};
    for (std::size_t e = 0; e < basis.size(); ++e) {
        std::vector<double> v(nodes.size());
        for (std::size_t j = 0; j < nodes.size(); ++j) v[j] = std::pow(nodes[j], basis.exponents[e]);
        const auto c = interpolate(basis, nodes, v);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - (i == e ? 1.0 : 0.0)) <= 1e-10);
    }
    const std::vector<double> zeros(nodes.size(), 0.0);
    for (double c : interpolate(basis, nodes, zeros)) CHECK(c == 0.0);

    Rng rng(33);
    for (int k = 0; k <= 4; ++k)
        for (int N = 1; N <= 4; ++N) {
            const auto b = build_basis(k, 3, N);
            std::vector<double> t(2 * N);
            for (int j = 0; j < 2 * N; ++j) t[j] = 1.0 + (j + 0.5) / (2 * N);
            std::vector<double> coef(b.size()), v(t.size());
            for (auto& c : coef) c = rng.uniform(-1.0, 1.0);
            for (std::size_t j = 0; j < t.size(); ++j)
                for (std::size_t e = 0; e < b.size(); ++e) v[j] += coef[e] * std::pow(t[j], b.exponents[e]);
            const auto back = interpolate(b, t, v);
            // Values carry rounding, so recovery is limited by the conditioning of the system.
            for (std::size_t e = 0; e < b.size(); ++e) CHECK(std::abs(back[e] - coef[e]) <= 1e-7);
            for (std::size_t j = 0; j < t.size(); ++j) {
                double s = 0.0;
                for (std::size_t e = 0; e < b.size(); ++e) s += back[e] * std::pow(t[j], b.exponents[e]);
                CHECK(std::abs(s - v[j]) <= 1e-13 * (1.0 + std::abs(v[j])));
            }
        }
    CHECK_THROWS_AS(interpolate(basis, std::vector<double>{1.0, 1.5}, std::vector<double>{0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(interpolate(basis, std::vector<double>{1.1, 1.1, 1.3, 1.4, 1.5, 1.6}, zeros), DomainError);
}

TEST_CASE("interpolation defect") {
    const auto basis = build_basis(0, 3, 2);
    const std::vector<double> nodes{1.1, 1.4, 1.7, 1.9};
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(1.0 + i / 50.0);
    const auto in_span = interpolation_defect(basis, nodes, [](double t) { return 2 * t * t - 1 / t + 0.5; }, grid);
    for (double v : in_span) CHECK(std::abs(v) <= 1e-9);
    const auto outside = interpolation_defect(basis, nodes, [](double t) { return std::pow(t, 5); }, grid);
    CHECK(*std::max_element(outside.begin(), outside.end()) > 1e-4);
    for (double v : interpolation_defect(basis, nodes, [](double t) { return std::pow(t, 5); }, nodes))
        CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("generalized Vandermonde is nonsingular on random node sets") {
    Rng rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const int N = rng.integer(1, 4), k = rng.integer(0, 4);
        std::vector<double> t(2 * N);
        for (auto& x : t) x = rng.uniform(1.0, 2.0);
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end()) continue;
        const Interpolator I(build_basis(k, 3, N), t, std::numeric_limits<double>::infinity());
        CHECK(std::isfinite(I.condition()));
        CHECK(I.condition() >= 1.0);
    }
}

}
