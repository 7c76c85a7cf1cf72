#include "pcub/hardy_annulus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcub/errors.hpp"

namespace pcub {

Annulus::Annulus(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
        throw DomainError("annulus requires 0 < a < b, got a = " + std::to_string(a) +
                          ", b = " + std::to_string(b));
}

// ---------------------------------------------------------------------------
// LaurentSeries

LaurentSeries::LaurentSeries(std::initializer_list<std::pair<const Exponent, Complex>> init) {
    for (const auto& [j, c] : init) add(j, c);
}

LaurentSeries::LaurentSeries(Map coeffs) {
    for (const auto& [j, c] : coeffs) add(j, c);
}

Complex LaurentSeries::coefficient(Exponent j) const {
    const auto it = coeffs_.find(j);
    return it == coeffs_.end() ? Complex{} : it->second;
}

void LaurentSeries::set(Exponent j, Complex c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("non-finite Laurent coefficient at exponent " + std::to_string(j));
    if (c == Complex{})
        coeffs_.erase(j);
    else
        coeffs_[j] = c;
}

void LaurentSeries::add(Exponent j, Complex c) { set(j, coefficient(j) + c); }

LaurentSeries::Exponent LaurentSeries::min_exponent() const {
    if (coeffs_.empty()) throw DomainError("empty Laurent series has no exponents");
    return coeffs_.begin()->first;
}

LaurentSeries::Exponent LaurentSeries::max_exponent() const {
    if (coeffs_.empty()) throw DomainError("empty Laurent series has no exponents");
    return coeffs_.rbegin()->first;
}

LaurentSeries::Exponent LaurentSeries::max_abs_exponent() const {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(min_exponent()), std::abs(max_exponent()));
}

Complex LaurentSeries::operator()(Complex z) const {
    Complex acc{};
    for (const auto& [j, c] : coeffs_) acc += c * int_pow(z, j);
    return acc;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
    for (const auto& [j, c] : other.coeffs_) add(j, c);
    return *this;
}

LaurentSeries& LaurentSeries::operator*=(Complex s) {
    Map scaled;
    for (const auto& [j, c] : coeffs_)
        if (s * c != Complex{}) scaled.emplace(j, s * c);
    coeffs_ = std::move(scaled);
    return *this;
}

// ---------------------------------------------------------------------------
// Index sets and component functions

bool in_riesz_set(std::int64_t j, int k, int d) {
    const std::int64_t first = k;
    const std::int64_t second = -static_cast<std::int64_t>(d) - k + 2;
    auto on_progression = [j](std::int64_t start) { return j >= start && (j - start) % 2 == 0; };
    return on_progression(first) || on_progression(second);
}

std::vector<std::int64_t> riesz_set(int k, int d, std::int64_t j_min, std::int64_t j_max) {
    if (j_min > j_max) throw DomainError("riesz_set requires j_min <= j_max");
    std::vector<std::int64_t> out;
    for (std::int64_t j = j_min; j <= j_max; ++j)
        if (in_riesz_set(j, k, d)) out.push_back(j);
    return out;
}

ComponentFunction::ComponentFunction(int k, int d, LaurentSeries series)
    : k_(k), d_(d), series_(std::move(series)) {
    if (k < 0) throw DomainError("component degree must be >= 0");
    if (d < 2) throw DomainError("dimension must be >= 2");
    for (const auto& [j, c] : series_.terms())
        if (!in_riesz_set(j, k, d))
            throw DomainError("exponent " + std::to_string(j) + " is not in R_k for k = " +
                              std::to_string(k) + ", d = " + std::to_string(d));
}

// ---------------------------------------------------------------------------
// HardyElement

HardyElement::HardyElement(int d, double weight) : d_(d), weight_(weight) {
    if (d < 2) throw DomainError("dimension must be >= 2");
    if (!(weight > 1.0) || !std::isfinite(weight))
        throw DomainError("weight parameter L must satisfy L > 1");
}

int HardyElement::max_degree() const noexcept {
    int k0 = -1;
    for (const auto& [idx, comp] : components_) k0 = std::max(k0, idx.k);
    return k0;
}

void HardyElement::set(SphericalIndex idx, LaurentSeries series) {
    if (idx.k < 0 || idx.l < 1 || idx.l > dim_harmonics(d_, idx.k))
        throw DomainError("component index (" + std::to_string(idx.k) + ", " +
                          std::to_string(idx.l) + ") out of range");
    if (series.empty()) {
        components_.erase(idx);
        return;
    }
    components_.insert_or_assign(idx, ComponentFunction(idx.k, d_, std::move(series)));
}

const ComponentFunction* HardyElement::find(SphericalIndex idx) const {
    const auto it = components_.find(idx);
    return it == components_.end() ? nullptr : &it->second;
}

HardyElement& HardyElement::operator+=(const HardyElement& other) {
    if (other.d_ != d_ || other.weight_ != weight_)
        throw DomainError("adding Hardy elements with different d or L");
    for (const auto& [idx, comp] : other.components_) {
        LaurentSeries sum = comp.series();
        if (const auto* mine = find(idx)) sum += mine->series();
        set(idx, std::move(sum));
    }
    return *this;
}

HardyElement& HardyElement::operator*=(Complex s) {
    Components scaled;
    for (const auto& [idx, comp] : components_) {
        auto series = s * comp.series();
        if (!series.empty()) scaled.emplace(idx, ComponentFunction(idx.k, d_, std::move(series)));
    }
    components_ = std::move(scaled);
    return *this;
}

// ---------------------------------------------------------------------------
// Norms and traces

double m2_mean(const LaurentSeries& f, double r) {
    if (!(r > 0.0)) throw DomainError("m2_mean requires r > 0");
    double acc = 0.0;
    for (const auto& [j, c] : f.terms()) acc += std::norm(c) * std::pow(r, 2.0 * j);
    return std::sqrt(acc);
}

Complex h2_inner(const LaurentSeries& f, const LaurentSeries& g, const Annulus& ann) {
    Complex acc{};
    for (const auto& [j, c] : f.terms()) {
        const Complex cg = g.coefficient(j);
        if (cg == Complex{}) continue;
        const double w = std::pow(ann.a(), 2.0 * j) + std::pow(ann.b(), 2.0 * j);
        acc += c * std::conj(cg) * w;
    }
    return kTwoPi * acc;
}

double h2_norm(const LaurentSeries& f, const Annulus& ann) {
    return std::sqrt(std::max(0.0, h2_inner(f, f, ann).real()));
}

std::vector<Complex> boundary_trace(const LaurentSeries& f, const Annulus& ann, Side side, int M) {
    const auto needed = 2 * f.max_abs_exponent() + 2;
    if (M < needed)
        throw DomainError("boundary_trace: M = " + std::to_string(M) + " undersamples exponents up to " +
                          std::to_string(f.max_abs_exponent()) + " (need M >= " +
                          std::to_string(needed) + ")");
    const double rho = side == Side::inner ? ann.a() : ann.b();
    std::vector<Complex> out(M);
    for (int m = 0; m < M; ++m) out[m] = f(std::polar(rho, kTwoPi * m / M));
    return out;
}

// ---------------------------------------------------------------------------
// Decompositions

std::pair<LaurentSeries, LaurentSeries> split_f1_f2(const ComponentFunction& f) {
    const int k = f.degree();
    const int d = f.dimension();
    if (d % 2 == 0)
        throw DomainError("split_f1_f2: even d = " + std::to_string(d) +
                          " makes the two exponent families collide; splitting is not unique");
    const std::int64_t second = -static_cast<std::int64_t>(d) - k + 2;
    LaurentSeries f1, f2;
    for (const auto& [j, c] : f.series().terms()) {
        if (j >= k && (j - k) % 2 == 0)
            f1.set((j - k) / 2, c);
        else
            f2.set((j - second) / 2, c);
    }
    return {f1, f2};
}

LaurentSeries join_f1_f2(int k, int d, const LaurentSeries& f1, const LaurentSeries& f2) {
    const std::int64_t second = -static_cast<std::int64_t>(d) - k + 2;
    LaurentSeries out;
    for (const auto& [m, c] : f1.terms()) {
        if (m < 0) throw DomainError("join_f1_f2: f1 has a negative exponent");
        out.add(k + 2 * m, c);
    }
    for (const auto& [m, c] : f2.terms()) {
        if (m < 0) throw DomainError("join_f1_f2: f2 has a negative exponent");
        out.add(second + 2 * m, c);
    }
    return out;
}

std::pair<LaurentSeries, LaurentSeries> hardy_decompose(const LaurentSeries& f) {
    LaurentSeries g, h;
    for (const auto& [j, c] : f.terms()) (j >= 0 ? g : h).set(j, c);
    return {g, h};
}

// ---------------------------------------------------------------------------
// H_L^2

double hl2_norm(const HardyElement& f, const Annulus& ann) {
    double acc = 0.0;
    for (const auto& [idx, comp] : f.components()) {
        const double n = h2_norm(comp.series(), ann);
        acc += n * n * std::pow(f.weight(), 2.0 * idx.k);
    }
    return std::sqrt(acc);
}

Complex evaluate(const HardyElement& f, Complex z, std::span<const double> theta,
                 const Annulus& ann) {
    if (!ann.contains(z)) throw DomainError("evaluate: z lies outside the open annulus");
    Complex acc{};
    int cached_k = -1;
    std::vector<double> harmonics;
    for (const auto& [idx, comp] : f.components()) {
        if (idx.k != cached_k) {
            harmonics = harmonics_of_degree(f.dimension(), idx.k, theta);
            cached_k = idx.k;
        }
        acc += comp(z) * harmonics[idx.l - 1];
    }
    return acc;
}

double max_principle_bound(const HardyElement& f, Complex z, const Annulus& ann) {
    if (!ann.contains(z)) throw DomainError("max_principle_bound: z must be strictly inside the annulus");
    const double r = std::abs(z);
    const double gap = std::min(1.0 - r / ann.b(), r / ann.a() - 1.0);
    return hl2_norm(f, ann) / gap;
}

} // namespace pcub
