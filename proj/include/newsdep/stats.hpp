#pragma once

#include <Eigen/Core>

namespace newsdep {

// Sample Kendall tau with tie corrections (Knight's O(n log n) algorithm).
double kendall_tau_sample(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
double kendall_tau_sample(const Eigen::MatrixX2d& pairs);

// 1-based ranks; ties receive the average rank.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& v);

// Autocorrelations r_1..r_max_lag around the sample mean.
Eigen::VectorXd autocorrelations(const Eigen::VectorXd& x, int max_lag);

double sample_variance(const Eigen::VectorXd& x); // denominator n-1

} // namespace newsdep
