#include <doctest.h>

#include <cmath>

#include "newsdep/quadrature.hpp"

using namespace newsdep;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {2, 5, 16, 64}) {
        const QuadRule& rule = gauss_legendre_01(n);
        CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
        // x^k on [0,1] for k up to 2n-1 integrates to 1/(k+1).
        for (int k = 0; k <= 2 * n - 1; k += std::max(1, n / 2)) {
            double val = 0.0;
            for (int i = 0; i < n; ++i) val += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(val == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss-legendre handles smooth transcendentals") {
    const QuadRule& rule = gauss_legendre_01(32);
    double val = 0.0;
    for (int i = 0; i < 32; ++i) val += rule.weights[i] * std::exp(rule.nodes[i]);
    CHECK(val == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("generalized gauss-laguerre reproduces gamma moments") {
    for (double alpha : {-0.5, 0.0, 1.5, 9.0}) {
        const QuadRule& rule = gauss_gen_laguerre(48, alpha);
        CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
        // E[S^k] for S ~ Gamma(alpha+1): product (alpha+1)...(alpha+k)
        double expected = 1.0;
        for (int k = 1; k <= 4; ++k) {
            expected *= alpha + k;
            double val = 0.0;
            for (int i = 0; i < rule.nodes.size(); ++i)
                val += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(val == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("unit square tensor integration") {
    double val = integrate_unit_square([](double u, double v) { return u * v; }, 16);
    CHECK(val == doctest::Approx(0.25).epsilon(1e-13));
    val = integrate_unit_square([](double u, double v) { return std::sin(u + v); }, 32);
    // int_0^1 int_0^1 sin(u+v) = 2 sin(1) - sin(2)
    CHECK(val == doctest::Approx(2.0 * std::sin(1.0) - std::sin(2.0)).epsilon(1e-13));
}
