#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pcub/chebyshev_quadrature.hpp"
#include "pcub/hardy_annulus.hpp"

namespace pcub {

// Measure on the annulus given through its component measures mu_{k,l} on [a, b].
struct PseudoPositiveMeasure {
    int d = 3;
    Annulus annulus{1.0, 2.0};
    std::map<SphericalIndex, RadialMeasure> components;

    int max_degree() const;
};

struct ValidationFailure {
    SphericalIndex idx;
    std::string reason;
};

struct ValidationReport {
    bool passed = true;
    std::vector<ValidationFailure> failures;
};

ValidationReport validate_pseudo_positive(const PseudoPositiveMeasure& mu);

// Atom sum plus the density integral, the latter by adaptive composite Gauss-Legendre.
double integral_against(const RadialMeasure& mu, const std::function<double(double)>& g);
Complex integral_against_complex(const RadialMeasure& mu, const std::function<Complex(double)>& g);
// Closed form through the moments of the measure.
Complex integral_against(const RadialMeasure& mu, const LaurentSeries& f);

struct GaussJacobiMeasure {
    int N = 1;
    // Zero component measures map to empty rules.
    std::map<SphericalIndex, QuadratureRule> components;
};

GaussJacobiMeasure build_gauss_measure(const PseudoPositiveMeasure& mu, int N,
                                       const GaussOptions& options = {});

// sum_{k,l} sum_j lambda_{k,l;j} f_{k,l}(t_{k,l;j})
Complex cubature_CN(const HardyElement& f, const GaussJacobiMeasure& gauss);

struct ComponentError {
    Complex exact;    // integral of f_{k,l} against mu_{k,l}
    Complex cubature; // the same against the Gaussian rule
    Complex error;    // exact - cubature
};

struct ErrorReport {
    std::map<SphericalIndex, ComponentError> components;
    Complex exact;
    Complex cubature;
    Complex total_error;

    // Filled by attach_bound.
    bool has_bound = false;
    std::map<int, double> Ck;
    double bound = 0.0;           // sqrt(sum C_k^2 / L^{2k}) * ||f||^2
    double bound_unsquared = 0.0; // sqrt(sum C_k^2 / L^{2k}) * ||f||
    bool passed = false;          // |E| <= bound
};

ErrorReport error_functional(const HardyElement& f, const PseudoPositiveMeasure& mu,
                             const GaussJacobiMeasure& gauss);

// Safety factor applied to the boundary-grid maximum in estimate_Ck.
inline constexpr double kCkSafetyFactor = 1.05;

// Empirical C_k of the component quadrature error: the maximum over tau on the
// circles |tau| = a' and |tau| = b' (M_tau points each) of
// |integral (K_k(z, tau) - H_{k,l;2N}[K_k(., tau)](z)) dmu_{k,l}(z)|, times kCkSafetyFactor.
double estimate_Ck(SphericalIndex idx, const RadialMeasure& component, const QuadratureRule& rule,
                   int d, int N, const Annulus& outer, int M_tau);
double estimate_Ck(SphericalIndex idx, const PseudoPositiveMeasure& mu, int N, const Annulus& outer,
                   int M_tau);

// Per-degree C_k (maximum over l) for every degree carried by mu.
std::map<int, double> estimate_Ck_all(const PseudoPositiveMeasure& mu, const GaussJacobiMeasure& gauss,
                                      const Annulus& outer, int M_tau);

// sqrt(sum_{k <= k0} a_k C_k^2 / L^{2k}) * ||f||^2_{H_L^2(outer)}
double error_bound(const HardyElement& f, const std::map<int, double>& Ck, const Annulus& outer);
// Same with the unsquared norm.
double error_bound_unsquared(const HardyElement& f, const std::map<int, double>& Ck, const Annulus& outer);

void attach_bound(ErrorReport& report, const HardyElement& f, const std::map<int, double>& Ck,
                  const Annulus& outer);

// C_N(f) for mu = mu1 - mu2: cubature against mu1's Gaussian measure minus mu2's.
// Components absent from either measure count as zero.
Complex signed_cubature(const PseudoPositiveMeasure& mu1, const PseudoPositiveMeasure& mu2,
                        const HardyElement& f, int N);

struct FitResult {
    LaurentSeries series;
    double residual = 0.0; // ||A c - v|| / ||v||
};

// Least-squares fit of samples v_i = f(r_i) by the exponents of R_k in [j_min, j_max].
FitResult fit_component(int k, int d, std::span<const double> radii, std::span<const Complex> values,
                        std::int64_t j_min, std::int64_t j_max);

// Structured element from a black-box real function F(r, theta): each f_{k,l}(r) for
// k <= k_max is sampled by laplace_fourier_coefficient on a radial grid and fitted by
// fit_component. Throws DomainError if any fit residual exceeds max_residual.
HardyElement ingest_function(const std::function<double(double, std::span<const double>)>& F, int d, double L,
                             int k_max, const Annulus& ann, std::int64_t j_min, std::int64_t j_max,
                             int sphere_res = 16, double max_residual = 1e-8);

} // namespace pcub
