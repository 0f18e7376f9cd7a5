#include "newsdep/quadrature.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>

#include <Eigen/Eigenvalues>

#include "newsdep/errors.hpp"

namespace newsdep {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the first components of the eigenvectors.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    jacobi.diagonal() = diag;
    for (int i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = offdiag[i];
        jacobi(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success) throw NumericalError("golub_welsch: eigensolver failed");
    QuadRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

std::mutex cache_mutex;

} // namespace

const QuadRule& gauss_legendre_01(int n) {
    if (n < 1) throw ValidationError("gauss_legendre_01: n must be positive");
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(std::max(0, n - 1));
    for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    QuadRule rule = golub_welsch(diag, off, 2.0); // on [-1,1]
    rule.nodes = (rule.nodes.array() + 1.0) * 0.5;
    rule.weights *= 0.5;
    return cache.emplace(n, std::move(rule)).first->second;
}

const QuadRule& gauss_gen_laguerre(int n, double alpha) {
    if (n < 1) throw ValidationError("gauss_gen_laguerre: n must be positive");
    if (alpha <= -1.0) throw ValidationError("gauss_gen_laguerre: alpha must exceed -1");
    static std::map<std::pair<int, long long>, QuadRule> cache;
    // Key alpha by its bit pattern; callers pass exact reused values.
    long long bits;
    static_assert(sizeof(bits) == sizeof(alpha));
    std::memcpy(&bits, &alpha, sizeof(bits));
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(n, bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Eigen::VectorXd diag(n), off(std::max(0, n - 1));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
    QuadRule rule = golub_welsch(diag, off, 1.0); // normalized: mu0 = 1
    return cache.emplace(key, std::move(rule)).first->second;
}

double integrate_unit_square(const std::function<double(double, double)>& f, int n) {
    const QuadRule& rule = gauss_legendre_01(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += rule.weights[j] * f(rule.nodes[i], rule.nodes[j]);
        total += rule.weights[i] * row;
    }
    return total;
}

} // namespace newsdep
