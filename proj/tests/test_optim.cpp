#include <doctest.h>

#include <cmath>

#include "newsdep/optim.hpp"

using namespace newsdep;

namespace {

double rosenbrock(const Eigen::VectorXd& x) {
    double a = 1.0 - x[0];
    double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
}

} // namespace

TEST_CASE("nelder-mead minimizes rosenbrock") {
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    auto res = nelder_mead(rosenbrock, x0);
    CHECK(res.fx < 1e-8);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("bfgs polishes to a tight gradient") {
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    auto rough = nelder_mead(rosenbrock, x0, {.max_iter = 200});
    auto res = bfgs_minimize(rosenbrock, rough.x);
    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-6));
    Eigen::VectorXd g = fd_gradient(rosenbrock, res.x);
    CHECK(scaled_gradient_norm(g, res.x, res.fx) < 1e-5);
}

TEST_CASE("objectives returning inf act as constraints") {
    auto f = [](const Eigen::VectorXd& x) {
        if (x[0] < 0.5) return std::numeric_limits<double>::infinity();
        return (x[0] - 0.2) * (x[0] - 0.2);
    };
    Eigen::VectorXd x0(1);
    x0 << 2.0;
    auto res = nelder_mead(f, x0);
    CHECK(res.x[0] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("scalar brent finds interior minima") {
    auto res = minimize_scalar([](double t) { return std::cos(t); }, 0.0, 2.0 * M_PI);
    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(M_PI).epsilon(1e-7));
    CHECK(res.fx == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("finite-difference hessian of a quadratic is exact") {
    Eigen::MatrixXd a(2, 2);
    a << 4.0, 1.0, 1.0, 3.0;
    auto f = [&](const Eigen::VectorXd& x) { return 0.5 * x.dot(a * x); };
    Eigen::VectorXd x(2);
    x << 0.3, -0.7;
    Eigen::MatrixXd h = fd_hessian(f, x);
    CHECK((h - a).cwiseAbs().maxCoeff() < 1e-5);
}
