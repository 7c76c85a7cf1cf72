#include "pcub/sphere_harmonics.hpp"

#include <cmath>
#include <string>

#include "pcub/errors.hpp"

namespace pcub {
namespace {

std::int64_t binomial(std::int64_t n, std::int64_t r) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= r; ++i) result = result * (n - r + i) / i;
    return result;
}

void check_dimension(int d) {
    if (d != 2 && d != 3)
        throw DomainError("spherical harmonics are evaluated for d in {2, 3}, got d = " +
                          std::to_string(d));
}

void check_unit(std::span<const double> theta, int d) {
    if (static_cast<int>(theta.size()) != d)
        throw DomainError("direction has " + std::to_string(theta.size()) +
                          " components, expected " + std::to_string(d));
    double norm2 = 0.0;
    for (double c : theta) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw DomainError("direction is not a unit vector");
}

// Fully normalized associated Legendre function
// sqrt((2k+1)/(4 pi) (k-m)!/(k+m)!) P_k^m(x), without Condon-Shortley phase.
// s = sqrt(1 - x^2) is passed in to avoid cancellation near the poles.
double normalized_legendre(int k, int m, double x, double s) {
    double pmm = 1.0 / std::sqrt(2.0 * kTwoPi);
    for (int i = 1; i <= m; ++i) pmm *= std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
    if (k == m) return pmm;
    double prev = pmm;
    double cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
    for (int n = m + 2; n <= k; ++n) {
        const double nn = n, mm = m;
        const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn - mm * mm));
        const double b = std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) /
                                   (4.0 * (nn - 1.0) * (nn - 1.0) - 1.0));
        const double next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

double eval_d2(int k, int l, std::span<const double> theta) {
    const double phi = std::atan2(theta[1], theta[0]);
    if (k == 0) return 1.0 / std::sqrt(kTwoPi);
    const double c = 1.0 / std::sqrt(std::numbers::pi);
    return l == 1 ? c * std::cos(k * phi) : c * std::sin(k * phi);
}

double eval_d3(int k, int l, std::span<const double> theta) {
    const int m = l - k - 1;
    const int am = std::abs(m);
    const double x = theta[2];
    const double s = std::hypot(theta[0], theta[1]);
    const double p = normalized_legendre(k, am, x, s);
    if (m == 0) return p;
    const double phi = std::atan2(theta[1], theta[0]);
    return m > 0 ? std::sqrt(2.0) * p * std::cos(m * phi)
                 : std::sqrt(2.0) * p * std::sin(am * phi);
}

} // namespace

std::int64_t dim_harmonics(int d, int k) {
    if (d < 2) throw DomainError("dim_harmonics requires d >= 2");
    if (k < 0) throw DomainError("dim_harmonics requires k >= 0");
    return binomial(k + d - 1, d - 1) - binomial(k + d - 3, d - 1);
}

double sphere_area(int d) {
    if (d < 2) throw DomainError("sphere_area requires d >= 2");
    // 2 pi^{d/2} / Gamma(d/2)
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

int zonal_order(int d, int k) {
    check_dimension(d);
    return d == 3 ? k + 1 : 1;
}

double eval_harmonic(int d, SphericalIndex idx, std::span<const double> theta) {
    check_dimension(d);
    if (idx.k < 0) throw DomainError("negative harmonic degree");
    if (idx.l < 1 || idx.l > dim_harmonics(d, idx.k))
        throw DomainError("order l = " + std::to_string(idx.l) + " out of range for degree " +
                          std::to_string(idx.k));
    check_unit(theta, d);
    return d == 2 ? eval_d2(idx.k, idx.l, theta) : eval_d3(idx.k, idx.l, theta);
}

std::vector<double> harmonics_of_degree(int d, int k, std::span<const double> theta) {
    check_dimension(d);
    if (k < 0) throw DomainError("negative harmonic degree");
    check_unit(theta, d);
    const auto count = static_cast<int>(dim_harmonics(d, k));
    std::vector<double> out(count);
    for (int l = 1; l <= count; ++l)
        out[l - 1] = d == 2 ? eval_d2(k, l, theta) : eval_d3(k, l, theta);
    return out;
}

SphereQuadrature::SphereQuadrature(int d, std::vector<double> coords, std::vector<double> weights)
    : d_(d), coords_(std::move(coords)), weights_(std::move(weights)) {
    check_dimension(d);
    if (coords_.size() != weights_.size() * static_cast<std::size_t>(d))
        throw DomainError("sphere quadrature: coordinate/weight size mismatch");
}

SphereQuadrature sphere_rule(int d, int resolution) {
    check_dimension(d);
    if (resolution < 1) throw DomainError("sphere_rule: resolution must be >= 1");
    const int n_phi = 2 * resolution;
    std::vector<double> coords;
    std::vector<double> weights;
    if (d == 2) {
        for (int i = 0; i < n_phi; ++i) {
            const double phi = kTwoPi * i / n_phi;
            coords.push_back(std::cos(phi));
            coords.push_back(std::sin(phi));
            weights.push_back(kTwoPi / n_phi);
        }
        return {2, std::move(coords), std::move(weights)};
    }
    const auto gl = gauss_legendre(resolution);
    for (int j = 0; j < resolution; ++j) {
        const double x = gl.nodes[j];
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        for (int i = 0; i < n_phi; ++i) {
            const double phi = kTwoPi * i / n_phi;
            coords.push_back(s * std::cos(phi));
            coords.push_back(s * std::sin(phi));
            coords.push_back(x);
            weights.push_back(gl.weights[j] * kTwoPi / n_phi);
        }
    }
    return {3, std::move(coords), std::move(weights)};
}

namespace {

template <typename T>
T project(std::span<const T> samples, SphericalIndex idx, const SphereQuadrature& rule) {
    if (samples.size() != rule.size())
        throw DomainError("laplace_fourier_coefficient: " + std::to_string(samples.size()) +
                          " samples for " + std::to_string(rule.size()) + " rule points");
    T acc{};
    for (std::size_t i = 0; i < rule.size(); ++i)
        acc += rule.weights()[i] * samples[i] * eval_harmonic(rule.dimension(), idx, rule.point(i));
    return acc;
}

} // namespace

double laplace_fourier_coefficient(std::span<const double> samples, SphericalIndex idx,
                                   const SphereQuadrature& rule) {
    return project(samples, idx, rule);
}

Complex laplace_fourier_coefficient(std::span<const Complex> samples, SphericalIndex idx,
                                    const SphereQuadrature& rule) {
    return project(samples, idx, rule);
}

} // namespace pcub
