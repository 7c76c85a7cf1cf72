#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pcub/numerics.hpp"
#include "pcub/sphere_harmonics.hpp"

namespace pcub {

// Complex annulus a < |z| < b, 0 < a < b.
class Annulus {
public:
    Annulus(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    bool contains(Complex z) const noexcept {
        const double r = std::abs(z);
        return r > a_ && r < b_;
    }

private:
    double a_;
    double b_;
};

enum class Side { inner, outer };

// Finitely supported Laurent series sum_j c_j z^j. Zero coefficients are not stored.
class LaurentSeries {
public:
    using Exponent = std::int64_t;
    using Map = std::map<Exponent, Complex>;

    LaurentSeries() = default;
    LaurentSeries(std::initializer_list<std::pair<const Exponent, Complex>> init);
    explicit LaurentSeries(Map coeffs);

    Complex coefficient(Exponent j) const;
    void set(Exponent j, Complex c);
    void add(Exponent j, Complex c);

    const Map& terms() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }
    std::size_t size() const noexcept { return coeffs_.size(); }
    Exponent min_exponent() const;
    Exponent max_exponent() const;
    Exponent max_abs_exponent() const;

    Complex operator()(Complex z) const;

    LaurentSeries& operator+=(const LaurentSeries& other);
    LaurentSeries& operator*=(Complex s);
    friend LaurentSeries operator+(LaurentSeries lhs, const LaurentSeries& rhs) { return lhs += rhs; }
    friend LaurentSeries operator*(Complex s, LaurentSeries f) { return f *= s; }
    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    Map coeffs_;
};

bool in_riesz_set(std::int64_t j, int k, int d);

// Elements of R_k within [j_min, j_max], ascending.
std::vector<std::int64_t> riesz_set(int k, int d, std::int64_t j_min, std::int64_t j_max);

// Element of the component space H^{2,k}: a Laurent series supported in R_k.
class ComponentFunction {
public:
    ComponentFunction(int k, int d, LaurentSeries series);

    int degree() const noexcept { return k_; }
    int dimension() const noexcept { return d_; }
    const LaurentSeries& series() const noexcept { return series_; }
    Complex operator()(Complex z) const { return series_(z); }

private:
    int k_;
    int d_;
    LaurentSeries series_;
};

// Finite Laplace-Fourier expansion sum_{k,l} f_{k,l}(z) Y_{k,l}(theta) with weight L > 1.
class HardyElement {
public:
    using Components = std::map<SphericalIndex, ComponentFunction>;

    HardyElement(int d, double weight);

    int dimension() const noexcept { return d_; }
    double weight() const noexcept { return weight_; }
    // Largest degree present, -1 when empty.
    int max_degree() const noexcept;
    const Components& components() const noexcept { return components_; }
    bool empty() const noexcept { return components_.empty(); }

    // Replaces the (k, l) component; an empty series removes it.
    void set(SphericalIndex idx, LaurentSeries series);
    const ComponentFunction* find(SphericalIndex idx) const;

    HardyElement& operator+=(const HardyElement& other);
    HardyElement& operator*=(Complex s);

private:
    int d_;
    double weight_;
    Components components_;
};

// (sum_j |c_j|^2 r^{2j})^{1/2}
double m2_mean(const LaurentSeries& f, double r);

// 2 pi sum_j f_j conj(g_j) (a^{2j} + b^{2j})
Complex h2_inner(const LaurentSeries& f, const LaurentSeries& g, const Annulus& ann);
double h2_norm(const LaurentSeries& f, const Annulus& ann);

// Samples of f on the circle |z| = a or b at phi_m = 2 pi m / M.
std::vector<Complex> boundary_trace(const LaurentSeries& f, const Annulus& ann, Side side, int M);

// f(z) = z^k f1(z^2) + z^{-d-k+2} f2(z^2), both f1, f2 supported in j >= 0. Odd d only.
std::pair<LaurentSeries, LaurentSeries> split_f1_f2(const ComponentFunction& f);

// Inverse of split_f1_f2.
LaurentSeries join_f1_f2(int k, int d, const LaurentSeries& f1, const LaurentSeries& f2);

// (g, h) with g holding exponents >= 0 and h the negative ones.
std::pair<LaurentSeries, LaurentSeries> hardy_decompose(const LaurentSeries& f);

double hl2_norm(const HardyElement& f, const Annulus& ann);

Complex evaluate(const HardyElement& f, Complex z, std::span<const double> theta,
                 const Annulus& ann);

// ||f||_{H_L^2} / min(1 - |z|/b, |z|/a - 1)
double max_principle_bound(const HardyElement& f, Complex z, const Annulus& ann);

} // namespace pcub
