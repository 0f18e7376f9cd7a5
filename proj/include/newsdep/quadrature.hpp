#pragma once

#include <functional>

#include <Eigen/Core>

namespace newsdep {

struct QuadRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

// n-point Gauss-Legendre rule on [0,1]. Rules are cached; references stay
// valid for the process lifetime.
const QuadRule& gauss_legendre_01(int n);

// n-point generalized Gauss-Laguerre rule for the weight x^alpha e^-x,
// normalized so the weights sum to one: sum w_i f(x_i) approximates E[f(S)]
// with S ~ Gamma(alpha+1, 1).
const QuadRule& gauss_gen_laguerre(int n, double alpha);

// Tensor-product integral of f over the open unit square with an n x n
// Gauss-Legendre rule.
double integrate_unit_square(const std::function<double(double, double)>& f, int n);

} // namespace newsdep
