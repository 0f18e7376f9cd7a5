#include "newsdep/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "newsdep/distributions.hpp"
#include "newsdep/errors.hpp"
#include "newsdep/ols.hpp"
#include "newsdep/stats.hpp"

namespace newsdep {

namespace {

TestResult finish(std::string name, double stat, double p, int lags) {
    TestResult r;
    r.name = std::move(name);
    r.statistic = stat;
    r.p_value = std::clamp(p, 0.0, 1.0);
    r.lags = lags;
    r.reject_at_5pct = r.p_value < 0.05;
    return r;
}

// MacKinnon (1994) response-surface p-values for the ADF tau statistic,
// constant-only regression. Polynomial in tau mapped through the normal CDF.
double mackinnon_pvalue_const(double tau) {
    constexpr double tau_star = -1.61, tau_min = -18.83, tau_max = 2.74;
    if (tau > tau_max) return 1.0;
    if (tau < tau_min) return 0.0;
    double z;
    if (tau <= tau_star) {
        constexpr double c[] = {2.1659, 1.4412, 0.038269};
        z = c[0] + tau * (c[1] + tau * c[2]);
    } else {
        constexpr double c[] = {1.7339, 0.93202, -0.12745, -0.010368};
        z = c[0] + tau * (c[1] + tau * (c[2] + tau * c[3]));
    }
    return norm_cdf(z);
}

} // namespace

TestResult adf_test(const Eigen::VectorXd& series, int lags) {
    const int n = static_cast<int>(series.size());
    if (lags < 0) throw ValidationError("adf_test: lags must be nonnegative");
    if (n <= lags + 10) throw ValidationError("adf_test: series too short for " +
                                              std::to_string(lags) + " lags");
    if ((series.array() - series[0]).abs().maxCoeff() == 0.0)
        throw ValidationError("adf_test: constant series");

    Eigen::VectorXd diff = series.tail(n - 1) - series.head(n - 1);
    const int rows = n - 1 - lags;
    Eigen::VectorXd y = diff.tail(rows);
    Eigen::MatrixXd x(rows, 2 + lags);
    x.col(0).setOnes();
    x.col(1) = series.segment(lags, rows); // level lagged once
    for (int j = 0; j < lags; ++j) x.col(2 + j) = diff.segment(lags - 1 - j, rows);

    RegressionResult reg = ols(y, x);
    double tau = reg.t_ratios[1];
    return finish("adf", tau, mackinnon_pvalue_const(tau), lags);
}

TestResult arch_lm_test(const Eigen::VectorXd& series, int lags) {
    const int n = static_cast<int>(series.size());
    if (lags < 1) throw ValidationError("arch_lm_test: lags must be positive");
    if (n <= 2 * lags) throw ValidationError("arch_lm_test: series too short for " +
                                             std::to_string(lags) + " lags");
    Eigen::VectorXd sq = (series.array() - series.mean()).square();
    if (sq.maxCoeff() == 0.0) throw ValidationError("arch_lm_test: constant series");

    const int rows = n - lags;
    Eigen::VectorXd y = sq.tail(rows);
    Eigen::MatrixXd x(rows, 1 + lags);
    x.col(0).setOnes();
    for (int j = 1; j <= lags; ++j) x.col(j) = sq.segment(lags - j, rows);

    RegressionResult reg = ols(y, x);
    double stat = rows * reg.r_squared;
    return finish("arch_lm", stat, 1.0 - chi2_cdf(stat, lags), lags);
}

TestResult ljung_box_test(const Eigen::VectorXd& series, int lags) {
    const int n = static_cast<int>(series.size());
    if (lags < 1) throw ValidationError("ljung_box_test: lags must be positive");
    if (n <= lags) throw ValidationError("ljung_box_test: series too short");

    Eigen::VectorXd r = autocorrelations(series, lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) q += r[k - 1] * r[k - 1] / (n - k);
    q *= n * (n + 2.0);
    return finish("ljung_box", q, 1.0 - chi2_cdf(q, lags), lags);
}

TestResult ks_test(const Eigen::VectorXd& sample, ReferenceDistribution reference) {
    const int n = static_cast<int>(sample.size());
    if (n < 10) throw ValidationError("ks_test: need at least 10 observations");

    std::vector<double> sorted(sample.data(), sample.data() + n);
    std::sort(sorted.begin(), sorted.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        double f = (reference == ReferenceDistribution::standard_normal)
                       ? norm_cdf(sorted[i])
                       : std::clamp(sorted[i], 0.0, 1.0);
        d = std::max(d, std::max((i + 1.0) / n - f, f - static_cast<double>(i) / n));
    }
    double lambda = std::sqrt(static_cast<double>(n)) * d;
    const char* name = (reference == ReferenceDistribution::standard_normal) ? "ks_normal"
                                                                             : "ks_uniform";
    return finish(name, d, kolmogorov_pvalue(lambda), 0);
}

} // namespace newsdep
