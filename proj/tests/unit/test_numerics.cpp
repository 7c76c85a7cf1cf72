#include <doctest.h>

#include <cmath>

#include "pcub/errors.hpp"
#include "pcub/numerics.hpp"

using namespace pcub;

TEST_SUITE("numerics") {

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n-1") {
    for (int n = 1; n <= 20; ++n) {
        const auto gl = gauss_legendre(n);
        REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], p);
            const double exact = p % 2 == 0 ? 2.0 / (p + 1) : 0.0;
            CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
        for (int i = 1; i < n; ++i) CHECK(gl.nodes[i - 1] < gl.nodes[i]);
    }
}

TEST_CASE("Legendre polynomials match explicit forms") {
    for (double x : {-1.0, -0.3, 0.0, 0.42, 1.0}) {
        CHECK(legendre_p(0, x) == 1.0);
        CHECK(legendre_p(1, x) == doctest::Approx(x));
        CHECK(legendre_p(2, x) == doctest::Approx(0.5 * (3 * x * x - 1)));
        CHECK(legendre_p(3, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)));
    }
    CHECK(legendre_p(40, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("int_pow agrees with repeated multiplication") {
    const Complex z(0.7, -1.3);
    Complex p = 1.0;
    for (int j = 0; j <= 12; ++j) {
        CHECK(std::abs(int_pow(z, j) - p) <= 1e-13 * std::abs(p));
        CHECK(std::abs(int_pow(z, -j) * p - 1.0) <= 1e-13);
        p *= z;
    }
}

TEST_CASE("compensated sum recovers cancelled terms") {
    CompensatedSum<double> s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
}

}
