#include "newsdep/hp_filter.hpp"

#include <algorithm>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "newsdep/errors.hpp"

namespace newsdep {

HpResult hp_filter(const Eigen::VectorXd& series, double smoothing) {
    const int n = static_cast<int>(series.size());
    if (n < 8) throw ValidationError("hp_filter: need at least 8 observations");
    if (smoothing < 0.0) throw ValidationError("hp_filter: smoothing must be nonnegative");

    HpResult res;
    if (smoothing == 0.0) {
        res.trend = series;
        res.cycle = Eigen::VectorXd::Zero(n);
        return res;
    }

    // A = I + smoothing * D'D with D the (n-2) x n second-difference operator.
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(5 * n);
    for (int i = 0; i < n; ++i) {
        auto dtd = [&](int r, int c) -> double {
            // (D'D)(r,c) assembled from rows [1,-2,1]
            double v = 0.0;
            for (int j = std::max(0, std::max(r, c) - 2); j <= std::min(n - 3, std::min(r, c)); ++j) {
                double dr = (r == j) ? 1.0 : (r == j + 1) ? -2.0 : (r == j + 2) ? 1.0 : 0.0;
                double dc = (c == j) ? 1.0 : (c == j + 1) ? -2.0 : (c == j + 2) ? 1.0 : 0.0;
                v += dr * dc;
            }
            return v;
        };
        for (int c = std::max(0, i - 2); c <= std::min(n - 1, i + 2); ++c) {
            double v = smoothing * dtd(i, c);
            if (i == c) v += 1.0;
            if (v != 0.0) trips.emplace_back(i, c, v);
        }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
    if (solver.info() != Eigen::Success) throw NumericalError("hp_filter: factorization failed");
    res.trend = solver.solve(series);
    if (solver.info() != Eigen::Success) throw NumericalError("hp_filter: solve failed");
    res.cycle = series - res.trend;
    return res;
}

} // namespace newsdep
