#include "newsdep/ols.hpp"

#include <cmath>

#include <Eigen/QR>

#include "newsdep/errors.hpp"

namespace newsdep {

Eigen::MatrixXd with_constant(const Eigen::MatrixXd& X) {
    Eigen::MatrixXd out(X.rows(), X.cols() + 1);
    out.col(0).setOnes();
    out.rightCols(X.cols()) = X;
    return out;
}

RegressionResult ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, bool robust,
                     const std::vector<std::string>& column_labels) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (y.size() != n) throw ValidationError("ols: y and X row count mismatch");
    if (n <= k) throw ValidationError("ols: need more observations than regressors");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        // Pivots beyond the numerical rank identify the dependent columns.
        std::string names;
        for (int i = qr.rank(); i < k; ++i) {
            int col = qr.colsPermutation().indices()[i];
            if (!names.empty()) names += ", ";
            names += (col < static_cast<int>(column_labels.size())) ? column_labels[col]
                                                                    : "column " + std::to_string(col);
        }
        throw ValidationError("ols: design matrix is rank deficient; collinear: " + names);
    }

    RegressionResult res;
    res.n = n;
    res.robust = robust;
    res.coefficients = qr.solve(y);
    res.residuals = y - X * res.coefficients;

    double ssr = res.residuals.squaredNorm();
    double sst = (y.array() - y.mean()).square().sum();
    res.r_squared = (sst > 0.0) ? 1.0 - ssr / sst : 0.0;

    Eigen::MatrixXd xtx_inv = (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd cov;
    if (robust) {
        // HC1: (X'X)^-1 X' diag(e^2) X (X'X)^-1 * n/(n-k)
        Eigen::MatrixXd meat = X.transpose() * res.residuals.array().square().matrix().asDiagonal() * X;
        cov = xtx_inv * meat * xtx_inv * (static_cast<double>(n) / (n - k));
    } else {
        double sigma2 = ssr / (n - k);
        cov = sigma2 * xtx_inv;
    }
    res.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    res.t_ratios.resize(k);
    for (int i = 0; i < k; ++i)
        res.t_ratios[i] = (res.se[i] > 0.0) ? res.coefficients[i] / res.se[i] : 0.0;
    return res;
}

} // namespace newsdep
