#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcub/numerics.hpp"

namespace pcub {

// Exponents of V_{k,d,N}: [k, k+2, ..., k+2(N-1), -d-k+2, ..., -d-k+2+2(N-1)].
struct RadialBasis {
    int k = 0;
    int d = 3;
    int N = 1;
    std::vector<int> exponents;

    std::size_t size() const noexcept { return exponents.size(); }
};

RadialBasis build_basis(int k, int d, int N);

struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

// Measure on [a, b]: point masses plus an optional polynomial density sum_i c_i r^i.
class RadialMeasure {
public:
    RadialMeasure(double a, double b, std::vector<Atom> atoms = {}, std::vector<double> density = {});

    static RadialMeasure lebesgue(double a, double b) { return {a, b, {}, {1.0}}; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& density() const noexcept { return density_; }
    bool has_density() const noexcept;

    double density_at(double t) const;
    // Distinct atom locations with positive weight; SIZE_MAX when a density is present.
    std::size_t support_size() const;
    bool is_zero() const { return support_size() == 0; }

    // Descriptions of nonnegativity violations (negative atoms, atoms outside [a, b],
    // density below -1e-12 at any of 1000 sample points). Empty when valid.
    std::vector<std::string> violations() const;

    RadialMeasure scaled(double c) const;
    RadialMeasure combined(const RadialMeasure& other, double self_factor, double other_factor) const;

private:
    double a_;
    double b_;
    std::vector<Atom> atoms_;
    std::vector<double> density_;
};

// m_e = integral of t^e against the measure, one entry per exponent.
struct MomentVector {
    std::vector<int> exponents;
    std::vector<double> values;
    std::vector<long double> extended; // same moments, rounded from 113-bit evaluation
};

MomentVector moments(const RadialMeasure& mu, std::span<const int> exponents);

struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> weights; // nonnegative

    std::size_t size() const noexcept { return nodes.size(); }
};

struct GaussOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int continuation_steps = 10;
    int max_newton_iterations = 200;
    int max_restarts = 5;
};

// Generalized Gaussian rule: 2N nodes and nonnegative weights exact on the 4N
// exponents of basis4N (built with order 2N). Throws DegenerateMeasure when the
// support has fewer than 2N points and SolverError when Newton fails.
QuadratureRule gauss_rule(const RadialMeasure& mu, const RadialBasis& basis4N,
                          const GaussOptions& options = {});

// |sum_j w_j t_j^e - m_e| for each exponent.
std::vector<double> moment_residuals(const QuadratureRule& rule, const RadialMeasure& mu,
                                     std::span<const int> exponents);

double apply_rule(const QuadratureRule& rule, std::span<const double> values);
Complex apply_rule(const QuadratureRule& rule, std::span<const Complex> values);

// Interpolation in span{t^e : e in basis} at the given nodes. The generalized
// Vandermonde is formed in t / c (c = mean node), column equilibrated and factored
// in 113-bit floating point.
class Interpolator {
public:
    Interpolator(const RadialBasis& basis, std::span<const double> nodes,
                 double max_condition = 1e14);
    ~Interpolator();
    Interpolator(Interpolator&&) noexcept;
    Interpolator& operator=(Interpolator&&) noexcept;

    const std::vector<int>& exponents() const noexcept { return exponents_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    // 2-norm condition number of the scaled, equilibrated Vandermonde.
    double condition() const noexcept { return condition_; }

    // Coefficients c_e of the interpolant sum_e c_e t^e.
    std::vector<long double> solve(std::span<const double> values) const;

    static long double evaluate(std::span<const int> exponents,
                                std::span<const long double> coefficients, double t);

private:
    struct Factorization;
    std::vector<int> exponents_;
    std::vector<double> nodes_;
    double condition_ = 0.0;
    std::unique_ptr<Factorization> lu_;
};

std::vector<double> interpolate(const RadialBasis& basis, std::span<const double> nodes,
                                std::span<const double> values);

// target(z) - H[target](z) on the grid z_eval.
std::vector<double> interpolation_defect(const RadialBasis& basis, std::span<const double> nodes,
                                         const std::function<double(double)>& target,
                                         std::span<const double> z_eval);

} // namespace pcub
