#pragma once

#include <functional>

#include <Eigen/Core>

namespace newsdep {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct OptimResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    int max_iter = 4000;
    double f_tol = 1e-12;
    double x_tol = 1e-10;
    double initial_step = 0.25;
};

// Minimizes f. Non-finite objective values are treated as +inf, which is how
// box or domain constraints are expressed by callers.
OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const NelderMeadOptions& opts = {});

struct BfgsOptions {
    int max_iter = 400;
    double grad_tol = 1e-7; // scaled gradient, see scaled_gradient_norm
};

OptimResult bfgs_minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const BfgsOptions& opts = {});

// Brent-style minimizer on [lo, hi].
OptimResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                            double tol = 1e-10, int max_iter = 200);

// Central-difference gradient and Hessian. Steps scale with |x_i| and shrink
// automatically when a probe point comes back non-finite.
Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x);
Eigen::MatrixXd fd_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x);

// max_i |g_i| * max(1,|x_i|) / max(1,|f|) -- the usual relative first-order
// optimality measure.
double scaled_gradient_norm(const Eigen::VectorXd& grad, const Eigen::VectorXd& x, double fx);

} // namespace newsdep
