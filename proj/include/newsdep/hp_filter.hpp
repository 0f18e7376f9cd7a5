#pragma once

#include <Eigen/Core>

namespace newsdep {

struct HpResult {
    Eigen::VectorXd trend;
    Eigen::VectorXd cycle;
};

// Hodrick-Prescott decomposition: trend minimizes
//   sum (y - tau)^2 + smoothing * sum (d^2 tau)^2
// via an exact sparse solve of the pentadiagonal normal equations.
// Monthly default smoothing elsewhere in the toolkit is 129600 (Ravn-Uhlig);
// 14400 is the other conventional monthly choice.
HpResult hp_filter(const Eigen::VectorXd& series, double smoothing);

inline constexpr double kHpMonthlyRavnUhlig = 129600.0;
inline constexpr double kHpMonthlyConventional = 14400.0;

} // namespace newsdep
