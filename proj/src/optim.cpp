#include "newsdep/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace newsdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guard(double v) { return std::isfinite(v) ? v : kInf; }

} // namespace

OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const NelderMeadOptions& opts) {
    const int n = static_cast<int>(x0.size());
    OptimResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++res.evaluations;
        return guard(f(x));
    };

    std::vector<Eigen::VectorXd> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) {
        double step = opts.initial_step * std::max(1.0, std::abs(x0[i]));
        simplex[i + 1][i] += step;
    }
    for (int i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<int> order(n + 1);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        ++res.iterations;
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        int best = order[0], worst = order[n], second = order[n - 1];

        double spread = std::abs(fv[worst] - fv[best]);
        double size = 0.0;
        for (int i = 1; i <= n; ++i)
            size = std::max(size, (simplex[order[i]] - simplex[best]).cwiseAbs().maxCoeff());
        if (spread < opts.f_tol * (1.0 + std::abs(fv[best])) && size < opts.x_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += simplex[i];
        centroid /= n;

        Eigen::VectorXd xr = centroid + alpha * (centroid - simplex[worst]);
        double fr = eval(xr);
        if (fr < fv[best]) {
            Eigen::VectorXd xe = centroid + gamma * (centroid - simplex[worst]);
            double fe = eval(xe);
            if (fe < fr) { simplex[worst] = xe; fv[worst] = fe; }
            else { simplex[worst] = xr; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            bool outside = fr < fv[worst];
            Eigen::VectorXd xc;
            if (outside)
                xc = centroid + rho * (xr - centroid);
            else
                xc = centroid - rho * (centroid - simplex[worst]);
            double fc = eval(xc);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    simplex[i] = simplex[best] + sigma * (simplex[i] - simplex[best]);
                    fv[i] = eval(simplex[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = simplex[best];
    res.fx = fv[best];
    return res;
}

Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x) {
    const double base = 6.0554544523933391e-06; // eps^(1/3)
    Eigen::VectorXd g(x.size());
    for (int i = 0; i < x.size(); ++i) {
        double h = base * std::max(1.0, std::abs(x[i]));
        Eigen::VectorXd xp = x, xm = x;
        double fp = kInf, fm = kInf;
        for (int attempt = 0; attempt < 5 && !(std::isfinite(fp) && std::isfinite(fm)); ++attempt) {
            if (attempt > 0) h *= 0.2;
            xp[i] = x[i] + h;
            xm[i] = x[i] - h;
            fp = guard(f(xp));
            fm = guard(f(xm));
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::MatrixXd fd_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    const double base = 1.1920928955078125e-04; // eps^(1/4)
    Eigen::VectorXd h(n);
    for (int i = 0; i < n; ++i) h[i] = base * std::max(1.0, std::abs(x[i]));

    // Shrink steps whose probes leave the objective's domain.
    for (int i = 0; i < n; ++i) {
        for (int attempt = 0; attempt < 6; ++attempt) {
            Eigen::VectorXd xp = x, xm = x;
            xp[i] += h[i];
            xm[i] -= h[i];
            if (std::isfinite(guard(f(xp))) && std::isfinite(guard(f(xm)))) break;
            h[i] *= 0.2;
        }
    }

    double f0 = guard(f(x));
    Eigen::MatrixXd hess(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h[i];
        xm[i] -= h[i];
        double fp = guard(f(xp)), fm = guard(f(xm));
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (int j = i + 1; j < n; ++j) {
            Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[i] += h[i]; xpp[j] += h[j];
            xpm[i] += h[i]; xpm[j] -= h[j];
            xmp[i] -= h[i]; xmp[j] += h[j];
            xmm[i] -= h[i]; xmm[j] -= h[j];
            double v = (guard(f(xpp)) - guard(f(xpm)) - guard(f(xmp)) + guard(f(xmm))) /
                       (4.0 * h[i] * h[j]);
            hess(i, j) = v;
            hess(j, i) = v;
        }
    }
    return hess;
}

double scaled_gradient_norm(const Eigen::VectorXd& grad, const Eigen::VectorXd& x, double fx) {
    double denom = std::max(1.0, std::abs(fx));
    double worst = 0.0;
    for (int i = 0; i < grad.size(); ++i)
        worst = std::max(worst, std::abs(grad[i]) * std::max(1.0, std::abs(x[i])) / denom);
    return worst;
}

OptimResult bfgs_minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                          const BfgsOptions& opts) {
    const int n = static_cast<int>(x0.size());
    OptimResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++res.evaluations;
        return guard(f(x));
    };

    Eigen::VectorXd x = x0;
    double fx = eval(x);
    Eigen::VectorXd g = fd_gradient(f, x);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        ++res.iterations;
        if (scaled_gradient_norm(g, x, fx) < opts.grad_tol) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd dir = -hinv * g;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) { // reset to steepest descent
            hinv.setIdentity();
            dir = -g;
            slope = g.dot(dir);
            if (!(slope < 0.0)) break;
        }
        // Backtracking Armijo line search.
        double step = 1.0;
        const double c1 = 1e-4;
        double fnew = kInf;
        Eigen::VectorXd xnew;
        bool ok = false;
        for (int ls = 0; ls < 60; ++ls) {
            xnew = x + step * dir;
            fnew = eval(xnew);
            if (fnew <= fx + c1 * step * slope) { ok = true; break; }
            step *= 0.5;
        }
        if (!ok) {
            res.converged = scaled_gradient_norm(g, x, fx) < 10.0 * opts.grad_tol;
            break;
        }
        Eigen::VectorXd gnew = fd_gradient(f, xnew);
        Eigen::VectorXd s = xnew - x;
        Eigen::VectorXd yv = gnew - g;
        double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            double rho = 1.0 / sy;
            hinv = (eye - rho * s * yv.transpose()) * hinv * (eye - rho * yv * s.transpose()) +
                   rho * s * s.transpose();
        }
        x = xnew;
        fx = fnew;
        g = gnew;
        if (s.cwiseAbs().maxCoeff() < 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
            res.converged = scaled_gradient_norm(g, x, fx) < 10.0 * opts.grad_tol;
            break;
        }
    }
    if (!res.converged && scaled_gradient_norm(g, x, fx) < opts.grad_tol) res.converged = true;
    res.x = x;
    res.fx = fx;
    return res;
}

OptimResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                            double tol, int max_iter) {
    const double golden = 0.3819660112501051;
    OptimResult res;
    auto eval = [&](double t) {
        ++res.evaluations;
        return guard(f(t));
    };
    double a = lo, b = hi;
    double x = a + golden * (b - a), w = x, v = x;
    double fx = eval(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        ++res.iterations;
        double m = 0.5 * (a + b);
        double tol1 = tol * std::abs(x) + 1e-12;
        double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
            res.converged = true;
            break;
        }
        bool use_golden = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            double etmp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etmp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        double fu = eval(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    res.x = Eigen::VectorXd::Constant(1, x);
    res.fx = fx;
    return res;
}

} // namespace newsdep
