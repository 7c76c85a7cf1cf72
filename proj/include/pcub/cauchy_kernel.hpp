#pragma once

#include <span>

#include "pcub/hardy_annulus.hpp"

namespace pcub {

// K_k(z, tau) for a boundary point tau on the inner (|tau| = a) or outer (|tau| = b) circle.
// Closed forms assume odd d >= 3, where the two exponent families of R_k have
// opposite parity.
struct KernelQuery {
    int k = 0;
    int d = 3;
    Complex z;
    Complex tau;
    Side side = Side::outer;
};

// (z/tau)^k tau^2 / (tau^2 - z^2), outer side.
Complex kernel_K1(const KernelQuery& q);
// tau^2/(tau^2 - z^2) for odd k, (z/tau) tau^2/(tau^2 - z^2) for even k; outer side.
Complex kernel_K2(const KernelQuery& q);
// Finite sum of (tau/z)^{|m|} over the negative exponents m of R_k; inner side.
Complex kernel_K3(const KernelQuery& q);
// K1 + K2 on the outer side, K3 on the inner side.
Complex kernel_Kk(const KernelQuery& q);

// Direct summation of the defining series, truncated once the geometric tail
// drops below tol. Used as an independent check on the closed forms.
Complex kernel_Kk_series(const KernelQuery& q, double tol);

struct KernelValue {
    Complex value;
    double tail_bound = 0.0; // bound on |K - truncation|
};

// sum_{k <= k_max} sum_l L^{-k} K_k(z, tau) Y_{k,l}(theta) Y_{k,l}(theta')
KernelValue kernel_full(Complex z, std::span<const double> theta, Complex tau,
                        std::span<const double> theta_prime, Side side, double weight,
                        int k_max, int d);

// Cauchy type formula for a component of degree k from boundary samples
// f*(b e^{i phi_m}) and f*(a e^{i phi_m}), phi_m = 2 pi m / M, by the trapezoid rule.
Complex reproduce_from_traces(int k, int d, Complex z, const Annulus& ann, std::span<const Complex> outer_trace,
                              std::span<const Complex> inner_trace);
// Boundary contour evaluation of the Cauchy type formula for f in H^{2,k},
// by the M-point trapezoid rule on both circles.
Complex reproduce_component(const ComponentFunction& f, Complex z, const Annulus& ann, int M);

// Pairing of the kernel with the boundary traces of f on (circle x sphere),
// componentwise: sum_{k,l} <K_k(z, .), f*_{k,l}> Y_{k,l}(theta). Boundary traces are
// sampled from the full function and projected with sphere_rule(d, sphere_res).
Complex reproduce_full(const HardyElement& f, Complex z, std::span<const double> theta,
                       const Annulus& ann, int M, int sphere_res);

// max |K_k(z, tau)| over k <= k_max, a + eps <= |z| <= b - eps and tau on both circles,
// sampled on a grid x grid lattice of radii and relative angles.
double kernel_bound(int k_max, double eps, const Annulus& ann, int grid, int d = 3);

} // namespace pcub
