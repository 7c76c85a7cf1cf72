#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "pcub/numerics.hpp"

namespace pcub {

// Degree k and order l (1 <= l <= dim_harmonics(d, k)) of a real spherical harmonic.
struct SphericalIndex {
    int k = 0;
    int l = 1;

    auto operator<=>(const SphericalIndex&) const = default;
};

// Dimension a_k of the space of degree-k homogeneous harmonic polynomials in R^d.
std::int64_t dim_harmonics(int d, int k);

// Surface measure of S^{d-1}.
double sphere_area(int d);

// Real orthonormal spherical harmonic Y_{k,l}(theta) on S^{d-1}, d in {2, 3}.
//
// d = 2: l = 1 is cos(k phi), l = 2 is sin(k phi), normalized on [0, 2 pi).
// d = 3: l maps to the azimuthal order m = l - k - 1 in [-k, k]; m < 0 carries
//        sin(|m| phi), m > 0 carries cos(m phi) and l = k + 1 is the zonal
//        harmonic sqrt((2k+1)/(4 pi)) P_k(cos theta).
double eval_harmonic(int d, SphericalIndex idx, std::span<const double> theta);

// All a_k harmonics of degree k at theta, ordered by l.
std::vector<double> harmonics_of_degree(int d, int k, std::span<const double> theta);

// Zonal index l for degree k (d = 3: k + 1; d = 2: 1).
int zonal_order(int d, int k);

class SphereQuadrature {
public:
    SphereQuadrature(int d, std::vector<double> coords, std::vector<double> weights);

    int dimension() const noexcept { return d_; }
    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    int d_;
    std::vector<double> coords_;
    std::vector<double> weights_;
};

// d = 2: trapezoid with 2*resolution points. d = 3: Gauss-Legendre in cos(theta)
// (resolution points) times trapezoid in phi (2*resolution points).
SphereQuadrature sphere_rule(int d, int resolution);

double laplace_fourier_coefficient(std::span<const double> samples, SphericalIndex idx,
                                   const SphereQuadrature& rule);
Complex laplace_fourier_coefficient(std::span<const Complex> samples, SphericalIndex idx,
                                    const SphereQuadrature& rule);

} // namespace pcub
