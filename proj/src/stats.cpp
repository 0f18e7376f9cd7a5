#include "newsdep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "newsdep/errors.hpp"

namespace newsdep {

namespace {

// Merge sort counting inversions; equal keys are not inversions.
long long sort_and_count(std::vector<double>& v, std::vector<double>& tmp, int lo, int hi) {
    if (hi - lo < 2) return 0;
    int mid = (lo + hi) / 2;
    long long inversions = sort_and_count(v, tmp, lo, mid) + sort_and_count(v, tmp, mid, hi);
    int i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            inversions += mid - i;
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
    return inversions;
}

long long tie_pairs(const std::vector<double>& sorted) {
    long long total = 0, run = 1;
    for (size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

} // namespace

double kendall_tau_sample(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(x.size());
    if (y.size() != n) throw ValidationError("kendall_tau_sample: length mismatch");
    if (n < 2) throw ValidationError("kendall_tau_sample: need at least two observations");

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    long long n1 = 0, n3 = 0;
    {
        long long run_x = 1, run_xy = 1;
        for (int i = 1; i <= n; ++i) {
            bool same_x = i < n && x[idx[i]] == x[idx[i - 1]];
            bool same_xy = same_x && y[idx[i]] == y[idx[i - 1]];
            if (same_x) ++run_x; else { n1 += run_x * (run_x - 1) / 2; run_x = 1; }
            if (same_xy) ++run_xy; else { n3 += run_xy * (run_xy - 1) / 2; run_xy = 1; }
        }
    }

    std::vector<double> ys(n), tmp(n);
    for (int i = 0; i < n; ++i) ys[i] = y[idx[i]];
    long long swaps = sort_and_count(ys, tmp, 0, n);
    long long n2 = tie_pairs(ys); // ys is now sorted

    long long num = n0 - n1 - n2 + n3 - 2 * swaps;
    double denom = std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
    if (denom == 0.0) throw ValidationError("kendall_tau_sample: degenerate constant input");
    return static_cast<double>(num) / denom;
}

double kendall_tau_sample(const Eigen::MatrixX2d& pairs) {
    return kendall_tau_sample(pairs.col(0), pairs.col(1));
}

Eigen::VectorXd average_ranks(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
    Eigen::VectorXd ranks(n);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        double avg = 0.5 * (i + j) + 1.0; // 1-based
        for (int k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

Eigen::VectorXd autocorrelations(const Eigen::VectorXd& x, int max_lag) {
    const int n = static_cast<int>(x.size());
    if (max_lag >= n) throw ValidationError("autocorrelations: max_lag must be below the length");
    double mean = x.mean();
    Eigen::VectorXd centered = x.array() - mean;
    double denom = centered.squaredNorm();
    Eigen::VectorXd r(max_lag);
    if (denom == 0.0) {
        r.setZero();
        return r;
    }
    for (int k = 1; k <= max_lag; ++k)
        r[k - 1] = centered.head(n - k).dot(centered.tail(n - k)) / denom;
    return r;
}

double sample_variance(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw ValidationError("sample_variance: need at least two observations");
    double mean = x.mean();
    return (x.array() - mean).square().sum() / (n - 1);
}

} // namespace newsdep
