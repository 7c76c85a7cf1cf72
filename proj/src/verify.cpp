#include "pcub/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "pcub/cauchy_kernel.hpp"
#include "pcub/cubature.hpp"
#include "pcub/errors.hpp"
#include "pcub/random.hpp"

namespace pcub {

namespace {

class Tracker {
public:
    Tracker(SuiteResult& result, double perturbation) : r_(result), p_(perturbation) {}

    // |computed + perturbation - expected| <= tol
    void close(double computed, double expected, double tol, const std::string& what) {
        record(std::abs(computed + p_ - expected), tol, what);
    }
    void close(Complex computed, Complex expected, double tol, const std::string& what) {
        record(std::abs(computed + p_ - expected), tol, what);
    }
    void at_most(double value, double limit, const std::string& what) {
        ++r_.checks;
        if (!(value <= limit)) fail(fmt::format("{}: {} exceeds {}", what, value, limit));
    }
    void truth(bool ok, const std::string& what) {
        ++r_.checks;
        if (!ok) fail(what);
    }

private:
    void record(double residual, double tol, const std::string& what) {
        ++r_.checks;
        const double ratio = residual / tol;
        if (!(ratio <= worst_ratio_)) {
            worst_ratio_ = std::isnan(ratio) ? INFINITY : ratio;
            r_.worst = residual;
            r_.tolerance = tol;
        }
        if (!(residual <= tol)) fail(fmt::format("{}: residual {} > {}", what, residual, tol));
    }
    void fail(const std::string& what) {
        if (r_.passed) r_.detail = what;
        r_.passed = false;
    }

    SuiteResult& r_;
    double p_;
    double worst_ratio_ = -1.0;
};

void sphere_suite(Tracker& t, Rng& rng, const VerifyOptions&) {
    for (int d : {2, 3}) {
        const auto rule = sphere_rule(d, 16);
        std::vector<SphericalIndex> idx;
        for (int k = 0; k <= 6; ++k)
            for (int l = 1; l <= dim_harmonics(d, k); ++l) idx.push_back({k, l});
        std::vector<std::vector<double>> values(idx.size(), std::vector<double>(rule.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t p = 0; p < rule.size(); ++p) values[i][p] = eval_harmonic(d, idx[i], rule.point(p));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = i; j < idx.size(); ++j) {
                double g = 0.0;
                for (std::size_t p = 0; p < rule.size(); ++p) g += rule.weights()[p] * values[i][p] * values[j][p];
                t.close(g, i == j ? 1.0 : 0.0, 1e-12,
                        fmt::format("d={} <Y({},{}), Y({},{})>", d, idx[i].k, idx[i].l, idx[j].k, idx[j].l));
            }
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = rng.sphere_point(3);
        const auto y = rng.sphere_point(3);
        const double c = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        for (int k = 0; k <= 8; ++k) {
            const auto yx = harmonics_of_degree(3, k, x);
            const auto yy = harmonics_of_degree(3, k, y);
            double s = 0.0;
            for (std::size_t l = 0; l < yx.size(); ++l) s += yx[l] * yy[l];
            t.close(s, (2 * k + 1) / (2.0 * kTwoPi) * legendre_p(k, c), 1e-12, fmt::format("addition theorem k={}", k));
        }
    }
}

void hardy_suite(Tracker& t, Rng& rng, const VerifyOptions&) {
    const Annulus ann(1.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentSeries f;
        for (int j = -6; j <= 6; ++j) f.set(j, rng.complex_unit_box());
        const int M = 64;
        double s = 0.0;
        for (Side side : {Side::inner, Side::outer})
            for (auto v : boundary_trace(f, ann, side, M)) s += std::norm(v);
        const double norm2 = std::pow(h2_norm(f, ann), 2);
        t.close(kTwoPi / M * s / norm2, 1.0, 1e-10, "Parseval identity");

        double sup = 0.0;
        for (int i = 1; i < 200; ++i) sup = std::max(sup, m2_mean(f, 1.0 + i / 200.0));
        const double ends = std::max(m2_mean(f, 1.0), m2_mean(f, 2.0));
        t.at_most(sup, ends * (1.0 + 1e-12), "interior mean exceeds boundary mean");

        const auto [g, h] = hardy_decompose(f);
        t.truth(g + h == f, "hardy_decompose is not exact");

        const int k = rng.integer(0, 5);
        const ComponentFunction fc(k, 3, random_component_series(rng, k, 3, -9, 9));
        const auto [f1, f2] = split_f1_f2(fc);
        t.truth(join_f1_f2(k, 3, f1, f2) == fc.series(), fmt::format("split round trip k={}", k));
    }
}

void kernel_suite(Tracker& t, Rng& rng, const VerifyOptions&) {
    for (int trial = 0; trial < 200; ++trial) {
        const int d = trial % 2 == 0 ? 3 : 5;
        const int k = rng.integer(0, 40);
        const Side side = rng.uniform() < 0.5 ? Side::outer : Side::inner;
        const double a = 1.0, b = 2.0;
        const double r = rng.uniform(1.05, 1.95);
        const Complex z = std::polar(r, rng.uniform(0.0, kTwoPi));
        const Complex tau = std::polar(side == Side::outer ? b : a, rng.uniform(0.0, kTwoPi));
        const KernelQuery q{k, d, z, tau, side};
        t.close(kernel_Kk(q), kernel_Kk_series(q, 1e-15), 1e-11,
                fmt::format("closed form vs series d={} k={}", d, k));
    }
    const Annulus ann(1.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = rng.integer(0, 4);
        const ComponentFunction f(k, 3, random_component_series(rng, k, 3, -9, 9));
        const Complex z = std::polar(rng.uniform(1.1, 1.9), rng.uniform(0.0, kTwoPi));
        t.close(reproduce_component(f, z, ann, 1024), f(z), 1e-9, fmt::format("reproducing formula k={}", k));
    }
}

void quadrature_suite(Tracker& t, Rng& rng, const VerifyOptions& opt) {
    const double a = 1.0, b = 2.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto mu = random_radial_measure(rng, a, b);
        for (int k = 0; k <= 3; ++k)
            for (int N = 1; N <= 3; ++N) {
                const auto basis = build_basis(k, 3, 2 * N);
                const auto rule = gauss_rule(mu, basis, opt.gauss);
                const auto m = moments(mu, basis.exponents);
                for (std::size_t e = 0; e < basis.size(); ++e) {
                    std::vector<double> v(rule.size());
                    for (std::size_t j = 0; j < rule.size(); ++j)
                        v[j] = std::pow(rule.nodes[j], basis.exponents[e]);
                    t.close(apply_rule(rule, v), m.values[e], 1e-10 * (1.0 + std::abs(m.values[e])),
                            fmt::format("moment k={} N={} e={}", k, N, basis.exponents[e]));
                }
                for (std::size_t j = 0; j < rule.size(); ++j) {
                    t.truth(rule.weights[j] >= 0.0, "negative weight");
                    t.truth(rule.nodes[j] >= a - 1e-12 && rule.nodes[j] <= b + 1e-12, "node outside [a, b]");
                }

                const auto half = build_basis(k, 3, N);
                std::vector<double> coef(half.size()), vals(rule.size());
                for (auto& c : coef) c = rng.uniform(-1.0, 1.0);
                for (std::size_t j = 0; j < rule.size(); ++j) {
                    double s = 0.0;
                    for (std::size_t e = 0; e < half.size(); ++e) s += coef[e] * std::pow(rule.nodes[j], half.exponents[e]);
                    vals[j] = s;
                }
                const Interpolator interp(half, rule.nodes);
                const auto c = interp.solve(vals);
                double res = 0.0, scale = 0.0;
                for (std::size_t j = 0; j < rule.size(); ++j) {
                    res = std::max(res, std::abs(static_cast<double>(
                                            Interpolator::evaluate(half.exponents, c, rule.nodes[j])) - vals[j]));
                    scale = std::max(scale, std::abs(vals[j]));
                }
                t.close(res, 0.0, 1e-9 * std::max(scale, 1e-300), fmt::format("interpolation k={} N={}", k, N));
            }
        const auto basis = build_basis(1, 3, 4);
        const auto r1 = gauss_rule(mu, basis, opt.gauss);
        const auto r3 = gauss_rule(mu.scaled(3.0), basis, opt.gauss);
        for (std::size_t j = 0; j < r1.size(); ++j) {
            t.close(r3.nodes[j], r1.nodes[j], 1e-10, "scale covariance (nodes)");
            t.close(r3.weights[j], 3.0 * r1.weights[j], 1e-10, "scale covariance (weights)");
        }
    }
}

void cubature_suite(Tracker& t, Rng& rng, const VerifyOptions& opt) {
    const Annulus ann(1.0, 2.0), outer(0.9, 2.2);
    const int d = 3, N = 2;
    PseudoPositiveMeasure mu{d, ann, {}};
    for (SphericalIndex idx : {SphericalIndex{0, 1}, SphericalIndex{1, 2}, SphericalIndex{2, 3}})
        mu.components.emplace(idx, random_radial_measure(rng, ann.a(), ann.b()));
    const auto gauss = build_gauss_measure(mu, N, opt.gauss);

    for (int trial = 0; trial < 5; ++trial) {
        HardyElement f(d, 2.0);
        for (const auto& [idx, m] : mu.components) {
            LaurentSeries s;
            for (int e : build_basis(idx.k, d, 2 * N).exponents) s.set(e, rng.complex_unit_box());
            f.set(idx, s);
        }
        const auto rep = error_functional(f, mu, gauss);
        t.close(rep.cubature, rep.exact, 1e-9 * (1.0 + std::abs(rep.exact)), "polyharmonic exactness");
    }

    const auto Ck = estimate_Ck_all(mu, gauss, outer, 128);
    for (int trial = 0; trial < 3; ++trial) {
        HardyElement f(d, 2.0), g(d, 2.0);
        for (const auto& [idx, m] : mu.components) {
            f.set(idx, random_component_series(rng, idx.k, d, -4, 8));
            g.set(idx, random_component_series(rng, idx.k, d, -4, 8));
        }
        auto fg = f;
        fg += g;
        const auto ef = error_functional(f, mu, gauss);
        const auto eg = error_functional(g, mu, gauss);
        const auto efg = error_functional(fg, mu, gauss);
        t.close(efg.total_error, ef.total_error + eg.total_error,
                1e-12 * (1.0 + std::abs(ef.exact) + std::abs(eg.exact)), "additivity of the error functional");
        t.at_most(std::abs(ef.total_error), error_bound(f, Ck, outer), "error bound (squared norm)");
        t.at_most(std::abs(ef.total_error), error_bound_unsquared(f, Ck, outer), "error bound (unsquared norm)");
    }
}

// FNV-1a, so suite streams do not depend on the standard library's string hash.
std::uint64_t stream_offset(const std::string& name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
    return h;
}

using SuiteFn = void (*)(Tracker&, Rng&, const VerifyOptions&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r{{"sphere", sphere_suite},
                                                  {"hardy", hardy_suite},
                                                  {"kernels", kernel_suite},
                                                  {"quadrature", quadrature_suite},
                                                  {"cubature", cubature_suite}};
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"sphere", "hardy", "kernels", "quadrature", "cubature"};
    return names;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
    const auto& reg = registry();
    for (const auto& s : options.suites)
        if (!reg.contains(s)) throw ConfigError("unknown suite '" + s + "'");
    if (!options.perturb_suite.empty() && !reg.contains(options.perturb_suite))
        throw ConfigError("unknown suite '" + options.perturb_suite + "'");

    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) {
        if (!options.suites.empty() && std::find(options.suites.begin(), options.suites.end(), name) == options.suites.end())
            continue;
        SuiteResult r;
        r.name = name;
        // Each suite draws from its own stream so filtering does not shift the others.
        Rng rng(options.seed + stream_offset(name));
        Tracker t(r, name == options.perturb_suite ? options.perturbation : 0.0);
        try {
            reg.at(name)(t, rng, options);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace pcub
