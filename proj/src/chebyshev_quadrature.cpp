#include "pcub/chebyshev_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/float128.hpp>

#include "dense_solve.hpp"
#include "pcub/errors.hpp"

namespace pcub {
namespace {

using Real = boost::multiprecision::float128;
using detail::DenseLU;
using detail::ipow;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Closed-form moments in extended precision.
std::vector<Real> moments_extended(const RadialMeasure& mu, std::span<const int> exponents) {
    if (!(mu.a() > 0.0)) throw DomainError("moments require a > 0 so negative powers are integrable");
    const Real a = mu.a(), b = mu.b();
    const Real log_ratio = log(b / a);
    std::vector<Real> out;
    out.reserve(exponents.size());
    for (int e : exponents) {
        Real v = 0;
        for (const auto& atom : mu.atoms()) v += Real(atom.weight) * ipow(Real(atom.location), e);
        const auto& p = mu.density();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0.0) continue;
            const int q = e + static_cast<int>(i) + 1;
            v += Real(p[i]) * (q == 0 ? log_ratio : (ipow(b, q) - ipow(a, q)) / q);
        }
        out.push_back(v);
    }
    return out;
}

struct NearDegenerate {};

// Newton iteration on the node/weight system sum_j lambda_j t_j^e = m_e.
// Nodes are parameterized as t = c + h s, s in (-1, 1); weights as lambda = mass * u.
class GaussSolver {
public:
    GaussSolver(std::vector<int> exponents, double a, double b, Real mass, int max_iterations)
        : exps_(std::move(exponents)), n_(exps_.size() / 2), c_((Real(a) + b) / 2),
          h_((Real(b) - a) / 2), mass_(mass), max_iterations_(max_iterations) {}

    std::size_t nodes() const { return n_; }
    Real node(const std::vector<Real>& s, std::size_t j) const { return c_ + h_ * s[j]; }

    std::vector<Real> residual(const std::vector<Real>& s, const std::vector<Real>& lam,
                               const std::vector<Real>& target) const {
        std::vector<Real> r(exps_.size());
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            Real acc = 0;
            for (std::size_t j = 0; j < n_; ++j) acc += lam[j] * ipow(node(s, j), exps_[i]);
            r[i] = acc / target[i] - 1;
        }
        return r;
    }

    static Real norm2(const std::vector<Real>& r) {
        Real acc = 0;
        for (const auto& x : r) acc += x * x;
        return sqrt(acc);
    }
    static Real norm_inf(const std::vector<Real>& r) {
        Real acc = 0;
        for (const auto& x : r) acc = std::max(acc, Real(abs(x)));
        return acc;
    }

    bool feasible(const std::vector<Real>& s, const std::vector<Real>& lam) const {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!(abs(s[j]) < 1) || !(lam[j] > 0)) return false;
            if (j > 0 && !(s[j] > s[j - 1])) return false;
        }
        return true;
    }

    void check_separation(const std::vector<Real>& s) const {
        // 1e-10 (b - a) in t is 2e-10 in s.
        for (std::size_t j = 1; j < n_; ++j)
            if (s[j] - s[j - 1] < Real(2e-10)) throw NearDegenerate{};
    }

    // Returns the final infinity-norm residual; converged iff <= tol.
    Real newton(std::vector<Real>& s, std::vector<Real>& lam, const std::vector<Real>& target,
                Real tol) const {
        const std::size_t m = exps_.size();
        auto r = residual(s, lam, target);
        for (int it = 0; it < max_iterations_; ++it) {
            const Real rinf = norm_inf(r);
            if (rinf <= tol) return rinf;
            check_separation(s);

            std::vector<Real> jac(m * m);
            for (std::size_t i = 0; i < m; ++i) {
                const int e = exps_[i];
                for (std::size_t j = 0; j < n_; ++j) {
                    const Real t = node(s, j);
                    const Real te = ipow(t, e);
                    jac[i * m + j] = lam[j] * e * (te / t) * h_ / target[i];
                    jac[i * m + n_ + j] = mass_ * te / target[i];
                }
            }
            std::vector<Real> scale(m);
            for (std::size_t j = 0; j < m; ++j) {
                Real acc = 0;
                for (std::size_t i = 0; i < m; ++i) acc += jac[i * m + j] * jac[i * m + j];
                scale[j] = acc > 0 ? sqrt(acc) : Real(1);
                for (std::size_t i = 0; i < m; ++i) jac[i * m + j] /= scale[j];
            }
            DenseLU<Real> lu(std::move(jac), m);
            if (lu.singular()) return rinf;
            std::vector<Real> rhs(m);
            for (std::size_t i = 0; i < m; ++i) rhs[i] = -r[i];
            auto step = lu.solve(rhs);
            for (std::size_t j = 0; j < m; ++j) step[j] /= scale[j];

            const Real r0 = norm2(r);
            Real alpha = 1;
            bool accepted = false;
            std::vector<Real> s_new(n_), lam_new(n_);
            while (alpha > Real(1e-10)) {
                for (std::size_t j = 0; j < n_; ++j) {
                    s_new[j] = s[j] + alpha * step[j];
                    lam_new[j] = lam[j] + alpha * step[n_ + j] * mass_;
                }
                if (feasible(s_new, lam_new)) {
                    auto r_new = residual(s_new, lam_new, target);
                    if (norm2(r_new) < (1 - Real(1e-4) * alpha) * r0) {
                        s = s_new;
                        lam = lam_new;
                        r = std::move(r_new);
                        accepted = true;
                        break;
                    }
                }
                alpha /= 2;
            }
            if (!accepted) return rinf;
        }
        return norm_inf(r);
    }

private:
    std::vector<int> exps_;
    std::size_t n_;
    Real c_, h_, mass_;
    int max_iterations_;
};

QuadratureRule rule_from_atoms(const RadialMeasure& mu) {
    std::map<double, double> merged;
    for (const auto& atom : mu.atoms())
        if (atom.weight > 0.0) merged[atom.location] += atom.weight;
    QuadratureRule rule;
    for (const auto& [t, w] : merged) {
        rule.nodes.push_back(t);
        rule.weights.push_back(w);
    }
    return rule;
}

} // namespace

// ---------------------------------------------------------------------------

RadialBasis build_basis(int k, int d, int N) {
    if (d < 3 || d % 2 == 0)
        throw DomainError("radial basis requires odd d >= 3 (even d makes exponents collide), got d = " +
                          std::to_string(d));
    if (N < 1) throw DomainError("radial basis requires N >= 1");
    if (k < 0) throw DomainError("radial basis requires k >= 0");
    RadialBasis basis{k, d, N, {}};
    for (int j = 0; j < N; ++j) basis.exponents.push_back(k + 2 * j);
    for (int j = 0; j < N; ++j) basis.exponents.push_back(-d - k + 2 + 2 * j);
    auto sorted = basis.exponents;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("radial basis exponents collide");
    return basis;
}

// ---------------------------------------------------------------------------
// RadialMeasure

RadialMeasure::RadialMeasure(double a, double b, std::vector<Atom> atoms, std::vector<double> density)
    : a_(a), b_(b), atoms_(std::move(atoms)), density_(std::move(density)) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("radial measure requires a finite interval a < b");
    for (const auto& atom : atoms_)
        if (!std::isfinite(atom.location) || !std::isfinite(atom.weight))
            throw DomainError("radial measure atom is not finite");
    for (double c : density_)
        if (!std::isfinite(c)) throw DomainError("radial measure density coefficient is not finite");
}

bool RadialMeasure::has_density() const noexcept {
    return std::any_of(density_.begin(), density_.end(), [](double c) { return c != 0.0; });
}

double RadialMeasure::density_at(double t) const {
    double acc = 0.0;
    for (auto it = density_.rbegin(); it != density_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

std::size_t RadialMeasure::support_size() const {
    if (has_density()) return std::numeric_limits<std::size_t>::max();
    std::vector<double> locs;
    for (const auto& atom : atoms_)
        if (atom.weight > 0.0) locs.push_back(atom.location);
    std::sort(locs.begin(), locs.end());
    return static_cast<std::size_t>(std::unique(locs.begin(), locs.end()) - locs.begin());
}

std::vector<std::string> RadialMeasure::violations() const {
    std::vector<std::string> out;
    for (const auto& atom : atoms_) {
        if (atom.weight < 0.0)
            out.push_back("negative atom weight " + fmt(atom.weight) + " at t = " + fmt(atom.location));
        if (atom.location < a_ || atom.location > b_)
            out.push_back("atom at t = " + fmt(atom.location) + " outside [" + fmt(a_) + ", " + fmt(b_) + "]");
    }
    if (has_density()) {
        double worst = 0.0, where = a_;
        for (int i = 0; i < 1000; ++i) {
            const double t = a_ + (b_ - a_) * i / 999.0;
            const double v = density_at(t);
            if (v < worst) {
                worst = v;
                where = t;
            }
        }
        if (worst < -1e-12) out.push_back("density " + fmt(worst) + " < 0 at t = " + fmt(where));
    }
    return out;
}

RadialMeasure RadialMeasure::scaled(double c) const { return combined(*this, c, 0.0); }

RadialMeasure RadialMeasure::combined(const RadialMeasure& other, double self_factor,
                                      double other_factor) const {
    if (other.a_ != a_ || other.b_ != b_) throw DomainError("combining measures on different intervals");
    std::vector<Atom> atoms;
    for (const auto& atom : atoms_) atoms.push_back({atom.location, self_factor * atom.weight});
    if (other_factor != 0.0)
        for (const auto& atom : other.atoms_) atoms.push_back({atom.location, other_factor * atom.weight});
    std::vector<double> density(std::max(density_.size(), other_factor != 0.0 ? other.density_.size() : 0));
    for (std::size_t i = 0; i < density_.size(); ++i) density[i] += self_factor * density_[i];
    if (other_factor != 0.0)
        for (std::size_t i = 0; i < other.density_.size(); ++i) density[i] += other_factor * other.density_[i];
    return {a_, b_, std::move(atoms), std::move(density)};
}

MomentVector moments(const RadialMeasure& mu, std::span<const int> exponents) {
    const auto ext = moments_extended(mu, exponents);
    MomentVector out{{exponents.begin(), exponents.end()}, {}, {}};
    for (const auto& v : ext) {
        out.values.push_back(static_cast<double>(v));
        out.extended.push_back(static_cast<long double>(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian rule

QuadratureRule gauss_rule(const RadialMeasure& mu, const RadialBasis& basis4N, const GaussOptions& options) {
    if (basis4N.size() % 4 != 0 || basis4N.size() == 0)
        throw DomainError("gauss_rule expects a basis with 4N exponents (built with order 2N)");
    const std::size_t n = basis4N.size() / 2;
    if (const auto bad = mu.violations(); !bad.empty())
        throw DomainError("gauss_rule requires a nonnegative measure: " + bad.front());
    const std::size_t support = mu.support_size();
    if (support < n)
        throw DegenerateMeasure("degenerate measure: support has " + std::to_string(support) +
                                    " points, the rule needs " + std::to_string(n),
                                support);
    if (support == n) return rule_from_atoms(mu);

    const auto target = moments_extended(mu, basis4N.exponents);
    const int zero_exp[] = {0};
    const Real mass = moments_extended(mu, zero_exp)[0];
    const GaussSolver solver(basis4N.exponents, mu.a(), mu.b(), mass, options.max_newton_iterations);

    const auto gl = gauss_legendre(static_cast<int>(n));
    const Real final_tol = Real(1e-26);
    const Real step_tol = Real(1e-8);
    Real last_residual = 0;

    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        std::vector<Real> s(n), lam(n);
        std::mt19937_64 jitter(static_cast<std::uint64_t>(restart));
        for (std::size_t j = 0; j < n; ++j) {
            double x = gl.nodes[j];
            if (restart > 0) {
                const double gap = 1.0 / static_cast<double>(n + 1);
                x += 0.25 * gap * (static_cast<double>(jitter() >> 11) * 0x1.0p-53 - 0.5);
                x = std::clamp(x, -0.999, 0.999);
            }
            s[j] = x;
            lam[j] = mass * Real(gl.weights[j]) / 2;
        }
        std::sort(s.begin(), s.end());
        // Homotopy start: the 2N atoms themselves, whose Gaussian rule is known.
        std::vector<Real> start(basis4N.size());
        for (std::size_t i = 0; i < basis4N.size(); ++i) {
            Real acc = 0;
            for (std::size_t j = 0; j < n; ++j) acc += lam[j] * ipow(solver.node(s, j), basis4N.exponents[i]);
            start[i] = acc;
        }

        try {
            Real sigma = 0;
            const Real nominal = Real(1) / std::max(1, options.continuation_steps);
            Real delta = nominal;
            bool failed = false;
            while (sigma < 1) {
                const Real next = std::min(Real(1), sigma + delta);
                std::vector<Real> mt(basis4N.size());
                for (std::size_t i = 0; i < mt.size(); ++i) mt[i] = (1 - next) * start[i] + next * target[i];
                auto s_try = s, lam_try = lam;
                const Real tol = next == 1 ? final_tol : step_tol;
                last_residual = solver.newton(s_try, lam_try, mt, tol);
                // The last step may stall short of final_tol in extended precision and
                // still be far below anything visible in double.
                const bool ok = last_residual <= tol || (next == 1 && last_residual <= Real(1e-20));
                if (ok) {
                    s = std::move(s_try);
                    lam = std::move(lam_try);
                    sigma = next;
                    delta = std::min(nominal, delta * 2);
                } else {
                    delta /= 2;
                    if (delta < Real(1e-7)) {
                        failed = true;
                        break;
                    }
                }
            }
            if (failed) continue;
        } catch (const NearDegenerate&) {
            continue;
        }

        QuadratureRule rule;
        for (std::size_t j = 0; j < n; ++j) {
            rule.nodes.push_back(static_cast<double>(solver.node(s, j)));
            rule.weights.push_back(static_cast<double>(lam[j]));
        }
        const auto res = moment_residuals(rule, mu, basis4N.exponents);
        const auto mom = moments(mu, basis4N.exponents);
        double worst = 0.0;
        bool within = true;
        for (std::size_t i = 0; i < res.size(); ++i) {
            worst = std::max(worst, res[i] / std::abs(mom.values[i]));
            if (res[i] > options.abs_tol + options.rel_tol * std::abs(mom.values[i])) within = false;
        }
        if (within) return rule;
        last_residual = worst;
    }
    throw SolverError("gauss_rule: Newton continuation failed after " +
                          std::to_string(options.max_restarts + 1) + " attempts, residual " +
                          fmt(static_cast<double>(last_residual)),
                      static_cast<double>(last_residual));
}

std::vector<double> moment_residuals(const QuadratureRule& rule, const RadialMeasure& mu,
                                     std::span<const int> exponents) {
    const auto exact = moments_extended(mu, exponents);
    std::vector<double> out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        Real acc = 0;
        for (std::size_t j = 0; j < rule.size(); ++j)
            acc += Real(rule.weights[j]) * ipow(Real(rule.nodes[j]), exponents[i]);
        out.push_back(static_cast<double>(abs(acc - exact[i])));
    }
    return out;
}

double apply_rule(const QuadratureRule& rule, std::span<const double> values) {
    if (values.size() != rule.size())
        throw DomainError("apply_rule: " + std::to_string(values.size()) + " values for " +
                          std::to_string(rule.size()) + " nodes");
    CompensatedSum<double> acc;
    for (std::size_t j = 0; j < rule.size(); ++j) acc.add(rule.weights[j] * values[j]);
    return acc.value();
}

Complex apply_rule(const QuadratureRule& rule, std::span<const Complex> values) {
    if (values.size() != rule.size())
        throw DomainError("apply_rule: " + std::to_string(values.size()) + " values for " +
                          std::to_string(rule.size()) + " nodes");
    CompensatedSum<Complex> acc;
    for (std::size_t j = 0; j < rule.size(); ++j) acc.add(rule.weights[j] * values[j]);
    return acc.value();
}

// ---------------------------------------------------------------------------
// Interpolation

struct Interpolator::Factorization {
    DenseLU<Real> lu;
    std::vector<Real> column_scale; // c^e * equilibration factor
};

Interpolator::Interpolator(const RadialBasis& basis, std::span<const double> nodes, double max_condition)
    : exponents_(basis.exponents), nodes_(nodes.begin(), nodes.end()) {
    const std::size_t n = exponents_.size();
    if (nodes_.size() != n)
        throw DomainError("interpolate: " + std::to_string(nodes_.size()) + " nodes for a basis of dimension " +
                          std::to_string(n));
    for (double t : nodes_)
        if (!(t > 0.0)) throw DomainError("interpolation nodes must be positive");
    {
        std::vector<double> sorted(nodes_);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("interpolation nodes must be distinct");
    }
    double center = 0.0;
    for (double t : nodes_) center += t / static_cast<double>(n);

    std::vector<Real> a(n * n);
    std::vector<Real> scale(n);
    Eigen::MatrixXd scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Real col_max = 0;
        for (std::size_t i = 0; i < n; ++i) {
            a[i * n + j] = ipow(Real(nodes_[i]) / center, exponents_[j]);
            col_max = std::max(col_max, Real(abs(a[i * n + j])));
        }
        for (std::size_t i = 0; i < n; ++i) {
            a[i * n + j] /= col_max;
            scaled(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(a[i * n + j]);
        }
        scale[j] = col_max * ipow(Real(center), exponents_[j]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    condition_ = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(condition_ <= max_condition))
        throw SolverError("interpolation system is ill-conditioned (condition estimate " + fmt(condition_) + ")",
                          condition_);
    lu_ = std::make_unique<Factorization>(Factorization{DenseLU<Real>(std::move(a), n), std::move(scale)});
    if (lu_->lu.singular()) throw SolverError("interpolation system is singular", condition_);
}

Interpolator::~Interpolator() = default;
Interpolator::Interpolator(Interpolator&&) noexcept = default;
Interpolator& Interpolator::operator=(Interpolator&&) noexcept = default;

std::vector<long double> Interpolator::solve(std::span<const double> values) const {
    if (values.size() != exponents_.size())
        throw DomainError("interpolate: value count does not match node count");
    std::vector<Real> rhs(values.begin(), values.end());
    const auto y = lu_->lu.solve(rhs);
    std::vector<long double> out(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) out[j] = static_cast<long double>(y[j] / lu_->column_scale[j]);
    return out;
}

long double Interpolator::evaluate(std::span<const int> exponents, std::span<const long double> coefficients,
                                   double t) {
    long double acc = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        acc += coefficients[i] * ipow(static_cast<long double>(t), exponents[i]);
    return acc;
}

std::vector<double> interpolate(const RadialBasis& basis, std::span<const double> nodes,
                                std::span<const double> values) {
    const Interpolator interp(basis, nodes);
    const auto c = interp.solve(values);
    return {c.begin(), c.end()};
}

std::vector<double> interpolation_defect(const RadialBasis& basis, std::span<const double> nodes,
                                         const std::function<double(double)>& target,
                                         std::span<const double> z_eval) {
    const Interpolator interp(basis, nodes);
    std::vector<double> values;
    for (double t : nodes) values.push_back(target(t));
    const auto c = interp.solve(values);
    std::vector<double> out;
    for (double z : z_eval)
        out.push_back(static_cast<double>(static_cast<long double>(target(z)) -
                                          Interpolator::evaluate(basis.exponents, c, z)));
    return out;
}

} // namespace pcub
