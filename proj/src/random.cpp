#include "pcub/random.hpp"

#include <cmath>
#include <set>

#include "pcub/errors.hpp"

namespace pcub {

std::vector<double> Rng::sphere_point(int d) {
    if (d == 2) {
        const double phi = uniform(0.0, kTwoPi);
        return {std::cos(phi), std::sin(phi)};
    }
    if (d == 3) {
        const double c = uniform(-1.0, 1.0);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double phi = uniform(0.0, kTwoPi);
        return {s * std::cos(phi), s * std::sin(phi), c};
    }
    throw DomainError("sphere points are available for d = 2 and d = 3");
}

LaurentSeries random_component_series(Rng& rng, int k, int d, std::int64_t j_min, std::int64_t j_max) {
    LaurentSeries f;
    for (auto j : riesz_set(k, d, j_min, j_max)) f.set(j, rng.complex_unit_box());
    return f;
}

HardyElement random_hardy_element(Rng& rng, int d, double L, int k_max, int components,
                                  std::int64_t j_min, std::int64_t j_max) {
    HardyElement f(d, L);
    std::set<SphericalIndex> used;
    int attempts = 0;
    while (static_cast<int>(used.size()) < components && attempts++ < 100 * components) {
        const int k = rng.integer(0, k_max);
        const int l = rng.integer(1, static_cast<int>(dim_harmonics(d, k)));
        if (!used.insert({k, l}).second) continue;
        auto s = random_component_series(rng, k, d, j_min, j_max);
        if (!s.empty()) f.set({k, l}, std::move(s));
    }
    return f;
}

RadialMeasure random_radial_measure(Rng& rng, double a, double b) {
    std::vector<Atom> atoms;
    const int n = rng.integer(1, 3);
    for (int i = 0; i < n; ++i) atoms.push_back({rng.uniform(a, b), rng.uniform(0.1, 1.0)});
    const double alpha = rng.uniform(0.0, 1.0);
    const double beta = rng.uniform(0.0, 2.0);
    const double c = rng.uniform(a, b);
    // alpha + beta (t - c)^2 = (alpha + beta c^2) - 2 beta c t + beta t^2
    return RadialMeasure(a, b, std::move(atoms), {alpha + beta * c * c, -2.0 * beta * c, beta});
}

} // namespace pcub
