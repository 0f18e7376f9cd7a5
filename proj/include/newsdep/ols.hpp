#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace newsdep {

struct RegressionResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd se;
    Eigen::VectorXd t_ratios;
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    int n = 0;
    bool robust = false;
};

// Least squares of y on the columns of X (no implicit intercept; callers add
// a constant column when they want one). robust=true uses HC1 sandwich
// standard errors. Throws ValidationError on rank deficiency, naming the
// collinear columns.
RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, bool robust = false,
                     const std::vector<std::string>& column_labels = {});

// Convenience: prepends a constant column.
Eigen::MatrixXd with_constant(const Eigen::MatrixXd& X);

} // namespace newsdep
