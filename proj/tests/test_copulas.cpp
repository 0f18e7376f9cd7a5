#include <doctest.h>

#include <cmath>
#include <vector>

#include "newsdep/copulas.hpp"
#include "newsdep/diagnostics.hpp"
#include "newsdep/errors.hpp"
#include "newsdep/quadrature.hpp"
#include "newsdep/stats.hpp"

using namespace newsdep;

namespace {

// Independent oracle for the density: central finite-difference cross-partial
// of the CDF.
double cross_partial_fd(const Copula& c, double u, double v, double h = 1e-4) {
    return (copula_cdf(c, u + h, v + h) - copula_cdf(c, u + h, v - h) -
            copula_cdf(c, u - h, v + h) + copula_cdf(c, u - h, v - h)) /
           (4.0 * h * h);
}

std::vector<Copula> representative_copulas() {
    return {
        make_copula(CopulaTag::gaussian, {0.5}),
        make_copula(CopulaTag::clayton, {0.134}),
        make_copula(CopulaTag::clayton, {1.0}),
        make_copula(CopulaTag::gumbel, {1.5}),
        make_copula(CopulaTag::t, {0.5, 8.0}),
        make_copula(CopulaTag::sjc, {0.3, 0.2}),
    };
}

} // namespace

TEST_CASE("clayton cdf closed-form anchors") {
    // Independence limit.
    Copula nearly_indep = make_copula(CopulaTag::clayton, {1e-8});
    CHECK(std::abs(copula_cdf(nearly_indep, 0.3, 0.7) - 0.21) < 1e-6);

    // Hand evaluation at theta=1: (1/u + 1/v - 1)^-1.
    Copula c1 = make_copula(CopulaTag::clayton, {1.0});
    CHECK(copula_cdf(c1, 0.5, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(copula_cdf(c1, 0.25, 0.8) == doctest::Approx(1.0 / (4.0 + 1.25 - 1.0)).epsilon(1e-14));
}

TEST_CASE("uniform margins: C(u,1) = u and C(u,0) = 0 for every family") {
    for (const auto& c : representative_copulas()) {
        for (double u : {0.0, 0.25, 0.5, 1.0}) {
            CHECK(copula_cdf(c, u, 1.0) == doctest::Approx(u).epsilon(2e-6));
            CHECK(copula_cdf(c, 1.0, u) == doctest::Approx(u).epsilon(2e-6));
            CHECK(copula_cdf(c, u, 0.0) == 0.0);
            CHECK(copula_cdf(c, 0.0, u) == 0.0);
        }
    }
}

TEST_CASE("invalid parameters and boundary density evaluation are rejected") {
    CHECK_THROWS_AS(make_copula(CopulaTag::gaussian, {1.2}), ValidationError);
    CHECK_THROWS_AS(make_copula(CopulaTag::clayton, {-0.5}), ValidationError);
    CHECK_THROWS_AS(make_copula(CopulaTag::gumbel, {0.8}), ValidationError);
    CHECK_THROWS_AS(make_copula(CopulaTag::t, {0.3, 1.5}), ValidationError);
    CHECK_THROWS_AS(make_copula(CopulaTag::sjc, {0.0, 0.5}), ValidationError);

    Copula c = make_copula(CopulaTag::clayton, {2.0});
    CHECK_THROWS_AS(copula_log_density(c, 0.0, 0.5), ValidationError);
    CHECK_THROWS_AS(copula_log_density(c, 0.5, 1.0), ValidationError);
    CHECK_THROWS_AS(copula_cdf(c, -0.1, 0.5), ValidationError);
}

TEST_CASE("log density vanishes in the clayton independence limit") {
    Copula c = make_copula(CopulaTag::clayton, {1e-8});
    for (double u = 0.1; u < 1.0; u += 0.2)
        for (double v = 0.1; v < 1.0; v += 0.2)
            CHECK(std::abs(copula_log_density(c, u, v)) < 1e-5);
}

TEST_CASE("density equals the finite-difference cross-partial of the cdf") {
    Copula c2 = make_copula(CopulaTag::clayton, {2.0});
    double fd = cross_partial_fd(c2, 0.4, 0.6);
    CHECK(std::exp(copula_log_density(c2, 0.4, 0.6)) == doctest::Approx(fd).epsilon(1e-4));

    for (const auto& c : representative_copulas()) {
        for (double u : {0.15, 0.5, 0.85}) {
            for (double v : {0.25, 0.7}) {
                double fd2 = cross_partial_fd(c, u, v);
                double dens = std::exp(copula_log_density(c, u, v));
                CHECK(dens == doctest::Approx(fd2).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("density integrates to one") {
    for (const auto& c : representative_copulas()) {
        double mass = integrate_unit_square(
            [&](double u, double v) { return std::exp(copula_log_density(c, u, v)); }, 64);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("tail coefficients: closed forms") {
    Copula paper_clayton = make_copula(CopulaTag::clayton, {0.134});
    auto tc = tail_coefficients(paper_clayton);
    CHECK(tc.lower == doctest::Approx(std::pow(2.0, -1.0 / 0.134)).epsilon(1e-10));
    CHECK(tc.upper == 0.0);

    auto tg = tail_coefficients(make_copula(CopulaTag::gaussian, {0.5}));
    CHECK(tg.lower == 0.0);
    CHECK(tg.upper == 0.0);

    auto tgum = tail_coefficients(make_copula(CopulaTag::gumbel, {2.0}));
    CHECK(tgum.upper == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(tgum.lower == 0.0);

    auto tsjc = tail_coefficients(make_copula(CopulaTag::sjc, {0.42, 0.17}));
    CHECK(tsjc.upper == doctest::Approx(0.42).epsilon(1e-14));
    CHECK(tsjc.lower == doctest::Approx(0.17).epsilon(1e-14));

    // t copula: symmetric positive tail dependence, between 0 and 1.
    auto tt = tail_coefficients(make_copula(CopulaTag::t, {0.5, 8.0}));
    CHECK(tt.lower == tt.upper);
    CHECK(tt.lower > 0.0);
    CHECK(tt.lower < 1.0);
}

TEST_CASE("clayton tail limit monte carlo: C(q,q)/q near 2^(-1/theta)") {
    // theta = 2: the pre-limit ratio at q = 1e-3 already equals the tail
    // coefficient to four digits, so the MC estimate checks both at once.
    Copula c = make_copula(CopulaTag::clayton, {2.0});
    const int n = 1000000;
    const double q = 1e-3;
    auto draws = sample_copula(c, n, 918273645ull);
    long hits = 0;
    for (int i = 0; i < n; ++i)
        if (draws(i, 0) <= q && draws(i, 1) <= q) ++hits;
    double estimate = static_cast<double>(hits) / (n * q);
    CHECK(std::abs(estimate - std::pow(2.0, -0.5)) < 0.02);
}

TEST_CASE("rank correlations: closed forms and quadrature cross-checks") {
    Copula c2 = make_copula(CopulaTag::clayton, {2.0});
    auto rc = rank_correlations(c2);
    CHECK(rc.kendall_tau == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kendall_tau_quadrature(c2) == doctest::Approx(0.5).epsilon(2e-3));

    Copula indep = make_copula(CopulaTag::clayton, {1e-12});
    auto rc0 = rank_correlations(indep);
    CHECK(rc0.kendall_tau == 0.0);
    CHECK(rc0.spearman_rho == 0.0);
    CHECK(std::abs(spearman_rho_quadrature(indep)) < 1e-6);

    // Gumbel closed form.
    auto rg = rank_correlations(make_copula(CopulaTag::gumbel, {2.5}));
    CHECK(rg.kendall_tau == doctest::Approx(1.0 - 1.0 / 2.5).epsilon(1e-14));

    // Gaussian closed forms against quadrature.
    Copula g = make_copula(CopulaTag::gaussian, {0.6});
    auto rgauss = rank_correlations(g);
    CHECK(rgauss.kendall_tau == doctest::Approx(2.0 * std::asin(0.6) / M_PI).epsilon(1e-14));
    CHECK(rgauss.spearman_rho == doctest::Approx(spearman_rho_quadrature(g)).epsilon(2e-4));

    // Comonotone limit: tau increases to 1 as rho -> 1.
    double prev = 0.0;
    for (double rho : {0.9, 0.99, 0.999, 0.99999}) {
        double tau = rank_correlations(make_copula(CopulaTag::gaussian, {rho})).kendall_tau;
        CHECK(tau > prev);
        prev = tau;
    }
    CHECK(prev > 0.99);
}

TEST_CASE("copula is 2-increasing and respects frechet-hoeffding bounds") {
    for (const auto& c : representative_copulas()) {
        const int grid = 10;
        std::vector<double> pts(grid);
        for (int i = 0; i < grid; ++i) pts[i] = (i + 0.5) / grid;
        for (int i = 0; i + 1 < grid; ++i) {
            for (int j = 0; j + 1 < grid; ++j) {
                double mass = copula_cdf(c, pts[i + 1], pts[j + 1]) -
                              copula_cdf(c, pts[i + 1], pts[j]) -
                              copula_cdf(c, pts[i], pts[j + 1]) + copula_cdf(c, pts[i], pts[j]);
                CHECK(mass >= -1e-12);
            }
        }
        for (double u : pts) {
            for (double v : pts) {
                double val = copula_cdf(c, u, v);
                CHECK(val >= std::max(u + v - 1.0, 0.0) - 1e-10);
                CHECK(val <= std::min(u, v) + 1e-10);
            }
        }
    }
}

TEST_CASE("clayton dependence measures increase in theta") {
    double prev_tau = -1.0, prev_lambda = -1.0;
    std::vector<double> prev_logc;
    std::vector<std::pair<double, double>> pts = {{0.1, 0.2}, {0.3, 0.15}, {0.45, 0.4}};
    for (double theta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        Copula c = make_copula(CopulaTag::clayton, {theta});
        double tau = rank_correlations(c).kendall_tau;
        double lambda = tail_coefficients(c).lower;
        CHECK(tau > prev_tau);
        CHECK(lambda > prev_lambda);
        prev_tau = tau;
        prev_lambda = lambda;
        std::vector<double> logc;
        for (auto [u, v] : pts) logc.push_back(copula_log_density(c, u, v));
        if (!prev_logc.empty())
            for (size_t i = 0; i < pts.size(); ++i) CHECK(logc[i] > prev_logc[i]);
        prev_logc = logc;
    }
}

TEST_CASE("sampling: determinism, uniform margins, dependence strength") {
    Copula c = make_copula(CopulaTag::clayton, {2.0});
    auto a = sample_copula(c, 256, 77ull);
    auto b = sample_copula(c, 256, 77ull);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0); // bit-identical

    const int n = 10000;
    std::uint64_t seed = 1234;
    for (const auto& fam : representative_copulas()) {
        auto draws = sample_copula(fam, n, seed);
        for (int j = 0; j < 2; ++j) {
            Eigen::VectorXd margin = draws.col(j);
            auto ks = ks_test(margin, ReferenceDistribution::uniform01);
            CHECK(ks.p_value > 0.01); // fails to reject uniformity at 1%
        }
    }

    auto draws = sample_copula(c, n, 5150ull);
    double tau = kendall_tau_sample(draws.col(0), draws.col(1));
    CHECK(std::abs(tau - 0.5) < 0.02);

    // Empirical tau also matches closed forms for the other families.
    auto tg = kendall_tau_sample(sample_copula(make_copula(CopulaTag::gumbel, {2.0}), n, 42ull));
    CHECK(std::abs(tg - 0.5) < 0.02);
    auto tt = kendall_tau_sample(sample_copula(make_copula(CopulaTag::t, {0.5, 6.0}), n, 42ull));
    CHECK(std::abs(tt - 2.0 * std::asin(0.5) / M_PI) < 0.02);

    // SJC sampled tail counts have the configured asymmetry direction.
    Copula sjc = make_copula(CopulaTag::sjc, {0.6, 0.15});
    auto sdraws = sample_copula(sjc, n, 99ull);
    int lower_hits = 0, upper_hits = 0;
    for (int i = 0; i < n; ++i) {
        if (sdraws(i, 0) < 0.05 && sdraws(i, 1) < 0.05) ++lower_hits;
        if (sdraws(i, 0) > 0.95 && sdraws(i, 1) > 0.95) ++upper_hits;
    }
    CHECK(upper_hits > lower_hits);
}

TEST_CASE("conditional cdf is a proper distribution in v") {
    for (const auto& c : representative_copulas()) {
        double prev = -1.0;
        for (double v : {0.05, 0.2, 0.4, 0.6, 0.8, 0.97}) {
            double h = copula_conditional_cdf(c, v, 0.37);
            CHECK(h >= prev);
            CHECK(h >= 0.0);
            CHECK(h <= 1.0);
            prev = h;
        }
        // Numerical derivative of C(u,v) in u matches the h-function.
        double eps = 1e-6;
        double fd = (copula_cdf(c, 0.37 + eps, 0.55) - copula_cdf(c, 0.37 - eps, 0.55)) / (2 * eps);
        CHECK(copula_conditional_cdf(c, 0.55, 0.37) == doctest::Approx(fd).epsilon(1e-5));
    }
}
