#include <doctest.h>

#include <cmath>

#include "newsdep/distributions.hpp"
#include "newsdep/errors.hpp"
#include "newsdep/quadrature.hpp"
#include "newsdep/rng.hpp"

using namespace newsdep;

namespace {

// Brute-force oracle for the bivariate normal rectangle probability:
// tensor Gauss-Legendre over [-12,h] x [-12,k].
double bvn_by_quadrature(double h, double k, double rho) {
    const QuadRule& rule = gauss_legendre_01(160);
    double ax = -12.0, ay = -12.0;
    double det = 1.0 - rho * rho;
    double total = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i) {
        double x = ax + (h - ax) * rule.nodes[i];
        double row = 0.0;
        for (int j = 0; j < rule.nodes.size(); ++j) {
            double y = ay + (k - ay) * rule.nodes[j];
            double q = (x * x - 2.0 * rho * x * y + y * y) / det;
            row += rule.weights[j] * std::exp(-0.5 * q);
        }
        total += rule.weights[i] * row;
    }
    return total * (h - ax) * (k - ay) / (2.0 * M_PI * std::sqrt(det));
}

} // namespace

TEST_CASE("normal cdf and quantile") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-12));
    CHECK(norm_cdf(-1.96) == doctest::Approx(0.0249978951482205).epsilon(1e-12));

    for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.77, 0.975, 1.0 - 1e-6}) {
        double x = norm_quantile(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-11));
    }
    CHECK(norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(norm_quantile(0.0), ValidationError);
    CHECK_THROWS_AS(norm_quantile(1.0), ValidationError);
}

TEST_CASE("incomplete gamma and chi-square") {
    // gamma_p(1/2, x) = erf(sqrt(x))
    for (double x : {0.01, 0.5, 1.0, 3.0, 10.0})
        CHECK(gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    // chi2 with 2 dof: 1 - exp(-x/2)
    for (double x : {0.1, 1.0, 5.99146, 20.0})
        CHECK(chi2_cdf(x, 2.0) == doctest::Approx(1.0 - std::exp(-0.5 * x)).epsilon(1e-12));
    CHECK(chi2_cdf(0.0, 5.0) == 0.0);
}

TEST_CASE("incomplete beta identities and inverse") {
    for (double x : {0.05, 0.3, 0.8}) {
        CHECK(inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-13));
        CHECK(inc_beta(2.0, 1.0, x) == doctest::Approx(x * x).epsilon(1e-13));
        CHECK(inc_beta(3.0, 2.0, x) ==
              doctest::Approx(1.0 - inc_beta(2.0, 3.0, 1.0 - x)).epsilon(1e-12));
    }
    for (double p : {1e-6, 0.01, 0.4, 0.5, 0.9, 1.0 - 1e-6}) {
        for (double a : {0.5, 2.0, 7.5}) {
            for (double b : {0.5, 1.5, 4.0}) {
                double x = inc_beta_inv(p, a, b);
                CHECK(inc_beta(a, b, x) == doctest::Approx(p).epsilon(5e-9));
            }
        }
    }
}

TEST_CASE("student t cdf matches closed forms at dof 1 and 2") {
    for (double x : {-5.0, -1.3, 0.0, 0.4, 2.7}) {
        CHECK(student_t_cdf(x, 1.0) ==
              doctest::Approx(0.5 + std::atan(x) / M_PI).epsilon(1e-12));
        CHECK(student_t_cdf(x, 2.0) ==
              doctest::Approx(0.5 + x / (2.0 * std::sqrt(2.0 + x * x))).epsilon(1e-12));
    }
}

TEST_CASE("student t quantile round trips") {
    for (double dof : {2.5, 4.0, 8.0, 30.0, 150.0}) {
        for (double p : {1e-6, 0.01, 0.3, 0.5, 0.86, 0.999}) {
            double x = student_t_quantile(p, dof);
            CHECK(student_t_cdf(x, dof) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    CHECK(student_t_quantile(0.5, 7.0) == 0.0);
    // Known table value: t_{0.975, 10} = 2.228138...
    CHECK(student_t_quantile(0.975, 10.0) == doctest::Approx(2.2281388520).epsilon(1e-8));
}

TEST_CASE("bivariate normal: exact identities") {
    // P(X<=0, Y<=0) = 1/4 + asin(rho)/(2 pi)
    for (double rho : {-0.95, -0.5, 0.0, 0.3, 0.7, 0.99}) {
        CHECK(bvn_cdf(0.0, 0.0, rho) ==
              doctest::Approx(0.25 + std::asin(rho) / (2.0 * M_PI)).epsilon(1e-13));
    }
    // Independence factorizes.
    for (double h : {-1.5, 0.2, 2.0})
        for (double k : {-0.7, 1.1})
            CHECK(bvn_cdf(h, k, 0.0) == doctest::Approx(norm_cdf(h) * norm_cdf(k)).epsilon(1e-13));
}

TEST_CASE("bivariate normal matches a brute-force quadrature oracle") {
    for (double rho : {-0.85, -0.4, 0.1, 0.6, 0.95}) {
        for (double h : {-1.8, -0.3, 0.9}) {
            for (double k : {-1.1, 0.5, 2.2}) {
                CHECK(bvn_cdf(h, k, rho) ==
                      doctest::Approx(bvn_by_quadrature(h, k, rho)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("bivariate t: margins and independence-like checks") {
    // y -> +inf gives the univariate t margin.
    for (double dof : {3.0, 8.0, 25.0}) {
        for (double x : {-1.5, 0.0, 1.0}) {
            CHECK(bvt_cdf(x, 40.0, 0.3, dof) ==
                  doctest::Approx(student_t_cdf(x, dof)).epsilon(1e-8));
        }
        // Exchangeability.
        CHECK(bvt_cdf(0.7, -0.2, 0.5, dof) ==
              doctest::Approx(bvt_cdf(-0.2, 0.7, 0.5, dof)).epsilon(1e-10));
    }
    // Large dof approaches the Gaussian case.
    CHECK(bvt_cdf(0.4, 0.9, 0.45, 800.0) ==
          doctest::Approx(bvn_cdf(0.4, 0.9, 0.45)).epsilon(5e-4));
}

TEST_CASE("kolmogorov tail probabilities at table points") {
    CHECK(kolmogorov_pvalue(1.22385) == doctest::Approx(0.10).epsilon(2e-4));
    CHECK(kolmogorov_pvalue(1.35810) == doctest::Approx(0.05).epsilon(2e-4));
    CHECK(kolmogorov_pvalue(1.62762) == doctest::Approx(0.01).epsilon(2e-3));
    CHECK(kolmogorov_pvalue(0.0) == 1.0);
    // Frozen high-precision values, covering both series branches.
    CHECK(kolmogorov_pvalue(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
    CHECK(kolmogorov_pvalue(1.0) == doctest::Approx(0.2699996716773545).epsilon(1e-12));
    CHECK(kolmogorov_pvalue(1.18) == doctest::Approx(0.1234538094297657).epsilon(1e-12));
    CHECK(kolmogorov_pvalue(1.5) == doctest::Approx(0.02221796261652513).epsilon(1e-12));
    CHECK(kolmogorov_pvalue(2.0) == doctest::Approx(0.0006709252557796953).epsilon(1e-10));
}

TEST_CASE("seeded samplers have the right moments") {
    Philox rng(2024);
    const int n = 100000;

    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = sample_normal(rng);
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));

    double gsum = 0.0, gsum2 = 0.0;
    const double shape = 2.7;
    for (int i = 0; i < n; ++i) {
        double g = sample_gamma(shape, rng);
        gsum += g;
        gsum2 += g * g;
    }
    double gmean = gsum / n;
    CHECK(gmean == doctest::Approx(shape).epsilon(0.02));
    CHECK(gsum2 / n - gmean * gmean == doctest::Approx(shape).epsilon(0.05));

    double psum = 0.0;
    for (int i = 0; i < 20000; ++i) psum += static_cast<double>(sample_poisson(8.5, rng));
    CHECK(psum / 20000 == doctest::Approx(8.5).epsilon(0.02));

    // Large-mean branch.
    double bigsum = 0.0;
    for (int i = 0; i < 5000; ++i) bigsum += static_cast<double>(sample_poisson(250.0, rng));
    CHECK(bigsum / 5000 == doctest::Approx(250.0).epsilon(0.01));
}
