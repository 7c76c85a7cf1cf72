#include "pcub/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>
#include <fmt/format.h>

#include "pcub/cauchy_kernel.hpp"
#include "pcub/errors.hpp"
#include "pcub/parallel.hpp"

namespace pcub {

namespace {

std::string describe(SphericalIndex idx) { return fmt::format("component (k={}, l={})", idx.k, idx.l); }

template <class T>
T integrate_density(const RadialMeasure& mu, const std::function<T(double)>& g) {
    static const GaussLegendre gl = gauss_legendre(16);
    const double a = mu.a(), b = mu.b();
    auto composite = [&](int panels) {
        CompensatedSum<T> sum;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h;
            for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                const double t = lo + 0.5 * h * (gl.nodes[i] + 1.0);
                sum.add(T(0.5 * h * gl.weights[i] * mu.density_at(t)) * g(t));
            }
        }
        return sum.value();
    };
    T prev = composite(2);
    for (int panels = 4; panels <= 4096; panels *= 2) {
        const T next = composite(panels);
        if (!std::isfinite(std::abs(next)))
            throw DomainError("integrand is not finite on the support of the measure");
        if (std::abs(next - prev) <= 1e-14 * std::max(std::abs(next), 1e-300) + 1e-300)
            return next;
        prev = next;
    }
    throw DomainError("density integral did not converge; integrand may not be integrable");
}

template <class T>
T integrate(const RadialMeasure& mu, const std::function<T(double)>& g) {
    CompensatedSum<T> sum;
    for (const auto& atom : mu.atoms()) {
        const T v = g(atom.location);
        if (!std::isfinite(std::abs(v)))
            throw DomainError(fmt::format("integrand is not finite at atom {}", atom.location));
        sum.add(T(atom.weight) * v);
    }
    if (mu.has_density()) sum.add(integrate_density(mu, g));
    return sum.value();
}

void check_same_annulus(const RadialMeasure& m, const Annulus& ann, SphericalIndex idx) {
    if (m.a() != ann.a() || m.b() != ann.b())
        throw DomainError(fmt::format("{} is defined on [{}, {}], expected [{}, {}]", describe(idx), m.a(),
                                      m.b(), ann.a(), ann.b()));
}

// sum_j w_j f(t_j) with the nodes on the positive real axis.
Complex apply_to_component(const QuadratureRule& rule, const LaurentSeries& f) {
    CompensatedSum<Complex> sum;
    for (std::size_t j = 0; j < rule.size(); ++j) sum.add(rule.weights[j] * f(Complex(rule.nodes[j], 0.0)));
    return sum.value();
}

double weighted_Ck_norm(const HardyElement& f, const std::map<int, double>& Ck) {
    const int k0 = f.max_degree();
    const double L = f.weight();
    double s = 0.0;
    for (int k = 0; k <= k0; ++k) {
        const auto it = Ck.find(k);
        if (it == Ck.end()) throw DomainError(fmt::format("missing C_k for degree {}", k));
        s += static_cast<double>(dim_harmonics(f.dimension(), k)) * it->second * it->second /
             std::pow(L, 2.0 * k);
    }
    return std::sqrt(s);
}

} // namespace

int PseudoPositiveMeasure::max_degree() const {
    int k0 = -1;
    for (const auto& [idx, m] : components) k0 = std::max(k0, idx.k);
    return k0;
}

ValidationReport validate_pseudo_positive(const PseudoPositiveMeasure& mu) {
    ValidationReport report;
    auto fail = [&](SphericalIndex idx, std::string reason) {
        report.passed = false;
        report.failures.push_back({idx, std::move(reason)});
    };
    for (const auto& [idx, m] : mu.components) {
        if (idx.k < 0 || idx.l < 1 || idx.l > dim_harmonics(mu.d, idx.k)) {
            fail(idx, "invalid spherical index");
            continue;
        }
        if (m.a() != mu.annulus.a() || m.b() != mu.annulus.b())
            fail(idx, fmt::format("interval [{}, {}] differs from the annulus", m.a(), m.b()));
        for (auto& v : m.violations()) fail(idx, std::move(v));
    }
    return report;
}

double integral_against(const RadialMeasure& mu, const std::function<double(double)>& g) {
    return integrate<double>(mu, g);
}

Complex integral_against_complex(const RadialMeasure& mu, const std::function<Complex(double)>& g) {
    return integrate<Complex>(mu, g);
}

Complex integral_against(const RadialMeasure& mu, const LaurentSeries& f) {
    if (f.empty()) return {};
    std::vector<int> exps;
    for (const auto& [j, c] : f.terms()) exps.push_back(static_cast<int>(j));
    const auto m = moments(mu, exps);
    CompensatedSum<Complex> sum;
    std::size_t i = 0;
    for (const auto& [j, c] : f.terms()) sum.add(c * m.values[i++]);
    return sum.value();
}

GaussJacobiMeasure build_gauss_measure(const PseudoPositiveMeasure& mu, int N, const GaussOptions& options) {
    if (N < 1) throw DomainError("N must be at least 1");
    if (mu.d < 3 || mu.d % 2 == 0) throw DomainError("Gaussian cubature requires odd d >= 3");
    const auto report = validate_pseudo_positive(mu);
    if (!report.passed) {
        const auto& f = report.failures.front();
        throw DomainError(fmt::format("{}: {}", describe(f.idx), f.reason));
    }

    std::vector<std::pair<SphericalIndex, const RadialMeasure*>> items;
    for (const auto& [idx, m] : mu.components) items.emplace_back(idx, &m);
    std::vector<QuadratureRule> rules(items.size());

    parallel_for(items.size(), [&](std::size_t i) {
        const auto [idx, m] = items[i];
        if (m->is_zero()) return;
        try {
            rules[i] = gauss_rule(*m, build_basis(idx.k, mu.d, 2 * N), options);
        } catch (const DegenerateMeasure& e) {
            throw DegenerateMeasure(fmt::format("{}: {}", describe(idx), e.what()), e.support_size());
        } catch (const SolverError& e) {
            throw SolverError(fmt::format("{}: {}", describe(idx), e.what()), e.residual());
        }
    });

    GaussJacobiMeasure out;
    out.N = N;
    for (std::size_t i = 0; i < items.size(); ++i) out.components.emplace(items[i].first, std::move(rules[i]));
    return out;
}

Complex cubature_CN(const HardyElement& f, const GaussJacobiMeasure& gauss) {
    CompensatedSum<Complex> sum;
    for (const auto& [idx, comp] : f.components()) {
        const auto it = gauss.components.find(idx);
        if (it == gauss.components.end()) throw DomainError(fmt::format("no rule for {}", describe(idx)));
        sum.add(apply_to_component(it->second, comp.series()));
    }
    return sum.value();
}

ErrorReport error_functional(const HardyElement& f, const PseudoPositiveMeasure& mu,
                             const GaussJacobiMeasure& gauss) {
    if (f.dimension() != mu.d) throw DomainError("function and measure have different dimensions");
    ErrorReport report;
    CompensatedSum<Complex> exact, cub;
    for (const auto& [idx, comp] : f.components()) {
        const auto m = mu.components.find(idx);
        const auto g = gauss.components.find(idx);
        if (m == mu.components.end()) throw DomainError(fmt::format("measure has no {}", describe(idx)));
        if (g == gauss.components.end()) throw DomainError(fmt::format("no rule for {}", describe(idx)));
        check_same_annulus(m->second, mu.annulus, idx);
        ComponentError ce;
        ce.exact = integral_against(m->second, comp.series());
        ce.cubature = apply_to_component(g->second, comp.series());
        ce.error = ce.exact - ce.cubature;
        exact.add(ce.exact);
        cub.add(ce.cubature);
        report.components.emplace(idx, ce);
    }
    report.exact = exact.value();
    report.cubature = cub.value();
    report.total_error = report.exact - report.cubature;
    return report;
}

double estimate_Ck(SphericalIndex idx, const RadialMeasure& component, const QuadratureRule& rule, int d,
                   int N, const Annulus& outer, int M_tau) {
    if (M_tau < 1) throw DomainError("M_tau must be positive");
    if (N < 1) throw DomainError("N must be at least 1");
    if (!(outer.a() < component.a() && outer.b() > component.b()))
        throw DomainError("outer annulus must strictly contain the measure's interval");
    if (component.is_zero()) return 0.0;
    if (rule.size() != static_cast<std::size_t>(2 * N))
        throw DomainError(fmt::format("{}: rule has {} nodes, expected {}", describe(idx), rule.size(), 2 * N));

    // H[K] lies in V_{k,d,N}, on which the rule is exact, so the integral of the
    // interpolation defect equals the quadrature error of K itself.
    double worst = 0.0;
    for (Side side : {Side::outer, Side::inner}) {
        const double r = side == Side::outer ? outer.b() : outer.a();
        for (int m = 0; m < M_tau; ++m) {
            const double phi = kTwoPi * m / M_tau;
            const Complex tau = std::polar(r, phi);
            auto K = [&](double t) { return kernel_Kk({idx.k, d, Complex(t, 0.0), tau, side}); };
            const Complex integral = integral_against_complex(component, K);
            CompensatedSum<Complex> q;
            for (std::size_t j = 0; j < rule.size(); ++j) q.add(rule.weights[j] * K(rule.nodes[j]));
            worst = std::max(worst, std::abs(integral - q.value()));
        }
    }
    return kCkSafetyFactor * worst;
}

double estimate_Ck(SphericalIndex idx, const PseudoPositiveMeasure& mu, int N, const Annulus& outer, int M_tau) {
    const auto it = mu.components.find(idx);
    if (it == mu.components.end()) throw DomainError(fmt::format("measure has no {}", describe(idx)));
    if (it->second.is_zero()) return 0.0;
    const auto rule = gauss_rule(it->second, build_basis(idx.k, mu.d, 2 * N));
    return estimate_Ck(idx, it->second, rule, mu.d, N, outer, M_tau);
}

std::map<int, double> estimate_Ck_all(const PseudoPositiveMeasure& mu, const GaussJacobiMeasure& gauss,
                                      const Annulus& outer, int M_tau) {
    std::vector<SphericalIndex> keys;
    for (const auto& [idx, m] : mu.components) keys.push_back(idx);
    std::vector<double> values(keys.size(), 0.0);
    parallel_for(keys.size(), [&](std::size_t i) {
        const auto idx = keys[i];
        const auto& m = mu.components.at(idx);
        if (m.is_zero()) return;
        const auto g = gauss.components.find(idx);
        if (g == gauss.components.end()) throw DomainError(fmt::format("no rule for {}", describe(idx)));
        values[i] = estimate_Ck(idx, m, g->second, mu.d, gauss.N, outer, M_tau);
    });
    std::map<int, double> Ck;
    for (int k = 0; k <= mu.max_degree(); ++k) Ck[k] = 0.0;
    for (std::size_t i = 0; i < keys.size(); ++i) Ck[keys[i].k] = std::max(Ck[keys[i].k], values[i]);
    return Ck;
}

double error_bound(const HardyElement& f, const std::map<int, double>& Ck, const Annulus& outer) {
    const double n = hl2_norm(f, outer);
    return weighted_Ck_norm(f, Ck) * n * n;
}

double error_bound_unsquared(const HardyElement& f, const std::map<int, double>& Ck, const Annulus& outer) {
    return weighted_Ck_norm(f, Ck) * hl2_norm(f, outer);
}

void attach_bound(ErrorReport& report, const HardyElement& f, const std::map<int, double>& Ck,
                  const Annulus& outer) {
    report.Ck = Ck;
    report.bound = error_bound(f, Ck, outer);
    report.bound_unsquared = error_bound_unsquared(f, Ck, outer);
    report.has_bound = true;
    report.passed = std::abs(report.total_error) <= report.bound;
}

Complex signed_cubature(const PseudoPositiveMeasure& mu1, const PseudoPositiveMeasure& mu2, const HardyElement& f,
                        int N) {
    if (mu1.d != mu2.d || mu1.d != f.dimension()) throw DomainError("dimension mismatch");
    if (mu1.annulus.a() != mu2.annulus.a() || mu1.annulus.b() != mu2.annulus.b())
        throw DomainError("measures live on different annuli");
    const auto g1 = build_gauss_measure(mu1, N);
    const auto g2 = build_gauss_measure(mu2, N);
    CompensatedSum<Complex> sum;
    for (const auto& [idx, comp] : f.components()) {
        if (const auto it = g1.components.find(idx); it != g1.components.end())
            sum.add(apply_to_component(it->second, comp.series()));
        if (const auto it = g2.components.find(idx); it != g2.components.end())
            sum.add(-apply_to_component(it->second, comp.series()));
    }
    return sum.value();
}

FitResult fit_component(int k, int d, std::span<const double> radii, std::span<const Complex> values,
                        std::int64_t j_min, std::int64_t j_max) {
    if (radii.size() != values.size()) throw DomainError("fit_component: radii and values differ in length");
    const auto exps = riesz_set(k, d, j_min, j_max);
    if (exps.empty()) throw DomainError("fit_component: no exponents of R_k in range");
    if (radii.size() < exps.size()) throw DomainError("fit_component: fewer samples than exponents");
    double c = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw DomainError("fit_component: radii must be positive");
        c += r / radii.size();
    }

    const auto n = static_cast<Eigen::Index>(radii.size());
    const auto m = static_cast<Eigen::Index>(exps.size());
    Eigen::MatrixXd A(n, m);
    Eigen::MatrixXd v(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index e = 0; e < m; ++e) A(i, e) = std::pow(radii[i] / c, static_cast<double>(exps[e]));
        v(i, 0) = values[i].real();
        v(i, 1) = values[i].imag();
    }
    const Eigen::VectorXd scale = A.colwise().norm().cwiseInverse();
    const Eigen::MatrixXd As = A * scale.asDiagonal();
    const Eigen::MatrixXd x = As.colPivHouseholderQr().solve(v);
    const double vnorm = v.norm();

    FitResult out;
    out.residual = vnorm > 0.0 ? (As * x - v).norm() / vnorm : 0.0;
    double largest = 0.0;
    std::vector<Complex> coef(exps.size());
    for (Eigen::Index e = 0; e < m; ++e) {
        coef[e] = Complex(x(e, 0), x(e, 1)) * scale(e) / std::pow(c, static_cast<double>(exps[e]));
        largest = std::max(largest, std::abs(coef[e]));
    }
    // Drop coefficients at the level of the fit noise.
    for (Eigen::Index e = 0; e < m; ++e)
        if (std::abs(coef[e]) > 1e-12 * largest) out.series.set(exps[e], coef[e]);
    return out;
}

HardyElement ingest_function(const std::function<double(double, std::span<const double>)>& F, int d, double L,
                             int k_max, const Annulus& ann, std::int64_t j_min, std::int64_t j_max,
                             int sphere_res, double max_residual) {
    if (k_max < 0) throw DomainError("ingest_function: k_max must be nonnegative");
    const auto rule = sphere_rule(d, sphere_res);
    const int n_r = static_cast<int>(j_max - j_min) + 9;
    std::vector<double> radii(n_r);
    for (int i = 0; i < n_r; ++i) {
        const double x = std::cos(M_PI * (i + 0.5) / n_r);
        radii[i] = 0.5 * (ann.a() + ann.b()) + 0.5 * (ann.b() - ann.a()) * x;
    }
    std::vector<std::vector<double>> samples(n_r, std::vector<double>(rule.size()));
    double global = 0.0;
    for (int i = 0; i < n_r; ++i)
        for (std::size_t p = 0; p < rule.size(); ++p) {
            samples[i][p] = F(radii[i], rule.point(p));
            if (!std::isfinite(samples[i][p])) throw DomainError("ingest_function: F is not finite on the grid");
            global = std::max(global, std::abs(samples[i][p]));
        }

    HardyElement f(d, L);
    for (int k = 0; k <= k_max; ++k)
        for (int l = 1; l <= dim_harmonics(d, k); ++l) {
            std::vector<Complex> v(n_r);
            double peak = 0.0;
            for (int i = 0; i < n_r; ++i) {
                v[i] = laplace_fourier_coefficient(samples[i], {k, l}, rule);
                peak = std::max(peak, std::abs(v[i]));
            }
            if (peak <= 1e-13 * std::max(global, 1e-300)) continue;
            const auto fit = fit_component(k, d, radii, v, j_min, j_max);
            if (fit.residual > max_residual)
                throw DomainError(fmt::format("component (k={}, l={}): fit residual {} exceeds {}", k, l, fit.residual,
                                              max_residual));
            f.set({k, l}, fit.series);
        }
    return f;
}

} // namespace pcub
