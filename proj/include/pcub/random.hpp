#pragma once

#include <cstdint>
#include <random>

#include "pcub/cubature.hpp"

namespace pcub {

// Seeded generator for randomized suites. Draws are computed from the raw
// 64-bit output so sequences agree across standard library implementations.
class Rng {
public:
    static constexpr const char* kName = "std::mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Integer in [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Complex complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    // Point on the unit sphere S^{d-1}, d in {2, 3}.
    std::vector<double> sphere_point(int d);

private:
    std::mt19937_64 engine_;
};

// Coefficients in the unit box on every exponent of R_k within [j_min, j_max].
LaurentSeries random_component_series(Rng& rng, int k, int d, std::int64_t j_min, std::int64_t j_max);

// Element with the given number of distinct components of degree <= k_max.
HardyElement random_hardy_element(Rng& rng, int d, double L, int k_max, int components,
                                  std::int64_t j_min, std::int64_t j_max);

// Atoms (1 to 3, positive weights) plus the density alpha + beta (t - c)^2 with
// alpha, beta >= 0, on [a, b].
RadialMeasure random_radial_measure(Rng& rng, double a, double b);

} // namespace pcub
