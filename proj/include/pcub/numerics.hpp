#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace pcub {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Nodes ascending on [-1, 1] with matching weights.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// Legendre polynomial P_k(x) by the three-term recurrence.
double legendre_p(int k, double x);

// z^j for integer j through the polar form, so large |j| keeps relative accuracy.
inline Complex int_pow(Complex z, std::int64_t j) {
    if (j == 0) return {1.0, 0.0};
    const double r = std::abs(z);
    const double phi = std::arg(z);
    return std::polar(std::pow(r, static_cast<double>(j)), static_cast<double>(j) * phi);
}

// Compensated (Neumaier) accumulator.
template <typename T>
class CompensatedSum {
public:
    void add(T x) {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

} // namespace pcub
