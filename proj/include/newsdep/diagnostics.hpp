#pragma once

#include <string>

#include <Eigen/Core>

namespace newsdep {

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    int lags = 0;
    bool reject_at_5pct = false;
};

// Augmented Dickey-Fuller unit-root test with a constant (no trend); p-values
// from the MacKinnon (1994) response-surface polynomials.
TestResult adf_test(const Eigen::VectorXd& series, int lags);

// Engle's LM test: T * R^2 from regressing the squared demeaned series on its
// own lags; chi-square(lags) reference.
TestResult arch_lm_test(const Eigen::VectorXd& series, int lags = 12);

// Ljung-Box Q = n(n+2) sum r_k^2/(n-k); chi-square(lags) reference.
TestResult ljung_box_test(const Eigen::VectorXd& series, int lags = 12);

enum class ReferenceDistribution { standard_normal, uniform01 };

// One-sample Kolmogorov-Smirnov test with the asymptotic p-value. When the
// reference parameters were estimated from the same sample the p-value is
// anti-conservative; report layers add a footnote in that case.
TestResult ks_test(const Eigen::VectorXd& sample, ReferenceDistribution reference);

} // namespace newsdep
