#include "pcub/cauchy_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pcub/errors.hpp"

namespace pcub {
namespace {

void check_query(const KernelQuery& q, Side expected) {
    if (q.k < 0) throw DomainError("kernel degree must be >= 0");
    if (q.d < 3 || q.d % 2 == 0)
        throw DomainError("kernel closed forms require odd d >= 3, got d = " + std::to_string(q.d));
    if (q.side != expected)
        throw DomainError(expected == Side::outer ? "K1/K2 are defined on the outer circle"
                                                  : "K3 is defined on the inner circle");
    const double rz = std::abs(q.z);
    const double rt = std::abs(q.tau);
    if (expected == Side::outer && !(rz < rt))
        throw DomainError("outer kernel requires |z| < |tau|");
    if (expected == Side::inner && !(rt < rz))
        throw DomainError("inner kernel requires |tau| < |z|");
    const Complex t2 = q.tau * q.tau;
    if (std::abs(t2 - q.z * q.z) <= 1e-13 * std::norm(q.tau))
        throw DomainError("kernel evaluation too close to the singularity z^2 = tau^2");
}

// First exponent of the second family of R_k.
std::int64_t second_start(int k, int d) { return -static_cast<std::int64_t>(d) - k + 2; }

Complex outer_denominator_form(const KernelQuery& q) {
    const Complex t2 = q.tau * q.tau;
    return t2 / (t2 - q.z * q.z);
}

} // namespace

Complex kernel_K1(const KernelQuery& q) {
    check_query(q, Side::outer);
    return int_pow(q.z / q.tau, q.k) * outer_denominator_form(q);
}

Complex kernel_K2(const KernelQuery& q) {
    check_query(q, Side::outer);
    const Complex base = outer_denominator_form(q);
    return q.k % 2 == 1 ? base : (q.z / q.tau) * base;
}

Complex kernel_K3(const KernelQuery& q) {
    check_query(q, Side::inner);
    const Complex ratio = q.tau / q.z;
    Complex acc{};
    for (auto m = second_start(q.k, q.d); m < 0; m += 2) acc += int_pow(ratio, -m);
    return acc;
}

Complex kernel_Kk(const KernelQuery& q) {
    return q.side == Side::outer ? kernel_K1(q) + kernel_K2(q) : kernel_K3(q);
}

Complex kernel_Kk_series(const KernelQuery& q, double tol) {
    if (!(tol > 0.0)) throw DomainError("kernel_Kk_series requires tol > 0");
    check_query(q, q.side);
    if (q.side == Side::inner) {
        CompensatedSum<Complex> acc;
        for (auto m = second_start(q.k, q.d); m < 0; m += 2) acc.add(int_pow(q.z / q.tau, m));
        return acc.value();
    }
    const Complex w = q.z / q.tau;
    const double x = std::abs(w);
    const double tail_scale = 1.0 / (1.0 - x * x);
    CompensatedSum<Complex> acc;
    // First family: exponents k + 2j
    for (std::int64_t m = q.k;; m += 2) {
        const double tail = std::pow(x, static_cast<double>(m)) * tail_scale;
        if (tail < tol) break;
        acc.add(int_pow(w, m));
    }
    // Second family: exponents -d-k+2+2j that are >= 0
    for (auto m = second_start(q.k, q.d);; m += 2) {
        if (m < 0) continue;
        const double tail = std::pow(x, static_cast<double>(m)) * tail_scale;
        if (tail < tol) break;
        acc.add(int_pow(w, m));
    }
    return acc.value();
}

KernelValue kernel_full(Complex z, std::span<const double> theta, Complex tau,
                        std::span<const double> theta_prime, Side side, double weight,
                        int k_max, int d) {
    if (!(weight > 1.0)) throw DomainError("kernel_full requires L > 1");
    if (k_max < 0) throw DomainError("kernel_full requires k_max >= 0");
    KernelValue out;
    for (int k = 0; k <= k_max; ++k) {
        const auto y = harmonics_of_degree(d, k, theta);
        const auto yp = harmonics_of_degree(d, k, theta_prime);
        double addition = 0.0;
        for (std::size_t l = 0; l < y.size(); ++l) addition += y[l] * yp[l];
        const Complex kk = kernel_Kk({k, d, z, tau, side});
        out.value += std::pow(weight, -k) * kk * addition;
    }

    // Tail: |K_k| <= 2/(1 - x^2) outside, y/(1 - y) inside, and
    // |sum_l Y Y'| <= a_k / |S^{d-1}|.
    double kernel_sup = 0.0;
    if (side == Side::outer) {
        const double x = std::abs(z / tau);
        kernel_sup = 2.0 / (1.0 - x * x);
    } else {
        const double y = std::abs(tau / z);
        kernel_sup = y / (1.0 - y);
    }
    double series = 0.0;
    double prev_term = 0.0;
    for (int k = k_max + 1; k < k_max + 100000; ++k) {
        const double term = std::pow(weight, -k) * static_cast<double>(dim_harmonics(d, k));
        series += term;
        if (term < prev_term && term < 1e-18 * series) break;
        prev_term = term;
    }
    out.tail_bound = kernel_sup * series / sphere_area(d);
    return out;
}

Complex reproduce_from_traces(int k, int d, Complex z, const Annulus& ann, std::span<const Complex> outer_trace,
                              std::span<const Complex> inner_trace) {
    if (!ann.contains(z)) throw DomainError("reproduce_from_traces: z outside the annulus");
    if (outer_trace.size() != inner_trace.size() || outer_trace.empty())
        throw DomainError("reproduce_from_traces: traces must be nonempty and of equal length");
    const int M = static_cast<int>(outer_trace.size());
    CompensatedSum<Complex> outer, inner;
    for (int m = 0; m < M; ++m) {
        const double phi = kTwoPi * m / M;
        outer.add(kernel_Kk({k, d, z, std::polar(ann.b(), phi), Side::outer}) * outer_trace[m]);
        inner.add(kernel_Kk({k, d, z, std::polar(ann.a(), phi), Side::inner}) * inner_trace[m]);
    }
    return (outer.value() + inner.value()) / static_cast<double>(M);
}

Complex reproduce_component(const ComponentFunction& f, Complex z, const Annulus& ann, int M) {
    if (!ann.contains(z)) throw DomainError("reproduce_component: z outside the annulus");
    const auto span = f.series().max_abs_exponent() + f.dimension() + f.degree() + 1;
    if (M < span)
        throw DomainError("reproduce_component: M = " + std::to_string(M) +
                          " too small for the exponent range (need >= " + std::to_string(span) + ")");
    std::vector<Complex> outer(M), inner(M);
    for (int m = 0; m < M; ++m) {
        const double phi = kTwoPi * m / M;
        outer[m] = f(std::polar(ann.b(), phi));
        inner[m] = f(std::polar(ann.a(), phi));
    }
    return reproduce_from_traces(f.degree(), f.dimension(), z, ann, outer, inner);
}

Complex reproduce_full(const HardyElement& f, Complex z, std::span<const double> theta,
                       const Annulus& ann, int M, int sphere_res) {
    if (!ann.contains(z)) throw DomainError("reproduce_full: z outside the annulus");
    if (f.empty()) return {};
    const int d = f.dimension();
    const int k0 = f.max_degree();
    if (sphere_res <= k0)
        throw DomainError("reproduce_full: sphere resolution must exceed the maximal degree");
    std::int64_t max_exp = 0;
    for (const auto& [idx, comp] : f.components())
        max_exp = std::max(max_exp, comp.series().max_abs_exponent());
    if (M < max_exp + d + k0 + 1) throw DomainError("reproduce_full: M too small for f");

    const auto rule = sphere_rule(d, sphere_res);
    const std::size_t S = rule.size();

    // Harmonic table over all (k, l) with k <= k0, and the slots of f's components.
    std::vector<SphericalIndex> slots;
    for (int k = 0; k <= k0; ++k)
        for (int l = 1; l <= dim_harmonics(d, k); ++l) slots.push_back({k, l});
    std::vector<double> table(slots.size() * S);
    for (std::size_t i = 0; i < S; ++i) {
        std::size_t row = 0;
        for (int k = 0; k <= k0; ++k)
            for (double y : harmonics_of_degree(d, k, rule.point(i))) table[(row++) * S + i] = y;
    }
    auto slot_of = [&](SphericalIndex idx) {
        return static_cast<std::size_t>(std::find(slots.begin(), slots.end(), idx) - slots.begin());
    };

    Complex total{};
    for (Side side : {Side::outer, Side::inner}) {
        const double rho = side == Side::outer ? ann.b() : ann.a();
        std::vector<Complex> trace(S);
        std::vector<CompensatedSum<Complex>> pairing(slots.size());
        for (int m = 0; m < M; ++m) {
            const Complex tau = std::polar(rho, kTwoPi * m / M);
            // Boundary trace f*(tau, theta') on the sphere grid.
            std::fill(trace.begin(), trace.end(), Complex{});
            for (const auto& [idx, comp] : f.components()) {
                const Complex v = comp(tau);
                const double* y = &table[slot_of(idx) * S];
                for (std::size_t i = 0; i < S; ++i) trace[i] += v * y[i];
            }
            for (std::size_t s = 0; s < slots.size(); ++s) {
                const double* y = &table[s * S];
                Complex proj{};
                for (std::size_t i = 0; i < S; ++i) proj += rule.weights()[i] * y[i] * trace[i];
                pairing[s].add(kernel_Kk({slots[s].k, d, z, tau, side}) * proj);
            }
        }
        for (std::size_t s = 0; s < slots.size(); ++s)
            total += pairing[s].value() / static_cast<double>(M) *
                     eval_harmonic(d, slots[s], theta);
    }
    return total;
}

double kernel_bound(int k_max, double eps, const Annulus& ann, int grid, int d) {
    if (k_max < 0) throw DomainError("kernel_bound requires k_max >= 0");
    if (!(eps > 0.0) || eps > (ann.b() - ann.a()) / 3.0)
        throw DomainError("kernel_bound requires 0 < eps <= (b - a)/3");
    if (grid < 2) throw DomainError("kernel_bound requires grid >= 2");
    const double r_lo = ann.a() + eps;
    const double r_hi = ann.b() - eps;
    double best = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        for (int i = 0; i < grid; ++i) {
            const double r = r_lo + (r_hi - r_lo) * i / (grid - 1);
            for (int j = 0; j < grid; ++j) {
                // |K_k| depends on z and tau only through z/tau, so tau stays real.
                const Complex z = std::polar(r, kTwoPi * j / grid);
                best = std::max(best, std::abs(kernel_Kk({k, d, z, ann.b(), Side::outer})));
                best = std::max(best, std::abs(kernel_Kk({k, d, z, ann.a(), Side::inner})));
            }
        }
    }
    return best;
}

} // namespace pcub
