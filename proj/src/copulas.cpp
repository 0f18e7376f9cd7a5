#include "newsdep/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "newsdep/distributions.hpp"
#include "newsdep/errors.hpp"
#include "newsdep/quadrature.hpp"

namespace newsdep {

namespace {

constexpr double kIndepEps = 1e-10; // clayton theta / gumbel theta-1 below this: independence

double logsumexp2(double a, double b) {
    double m = std::max(a, b);
    if (!std::isfinite(m)) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void check_unit_square(double u, double v, bool open) {
    bool ok = open ? (u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)
                   : (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0);
    if (!ok)
        throw ValidationError(open ? "copula density requires (u,v) strictly inside (0,1)^2"
                                   : "copula cdf requires (u,v) in [0,1]^2");
}

// ---------------------------------------------------------------------------
// Clayton
// ---------------------------------------------------------------------------

double clayton_log_s(double theta, double u, double v) {
    // S = u^-theta + v^-theta - 1, evaluated as 1 + expm1(.) + expm1(.) for
    // stability in the independence limit.
    double e1 = std::expm1(-theta * std::log(u));
    double e2 = std::expm1(-theta * std::log(v));
    return std::log1p(e1 + e2);
}

double clayton_cdf(double theta, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (theta < kIndepEps) return u * v;
    double e1 = std::expm1(-theta * std::log(u));
    double e2 = std::expm1(-theta * std::log(v));
    double sm1 = e1 + e2; // S - 1
    if (sm1 <= -1.0) return 0.0; // max(S,0) branch of the generator
    return std::exp(-std::log1p(sm1) / theta);
}

double clayton_log_density(double theta, double u, double v) {
    if (theta < kIndepEps) return 0.0;
    double ls = clayton_log_s(theta, u, v);
    return std::log1p(theta) - (theta + 1.0) * (std::log(u) + std::log(v)) -
           (2.0 + 1.0 / theta) * ls;
}

double clayton_conditional(double theta, double v, double u) {
    // dC/du = u^(-theta-1) * S^(-1/theta - 1)
    if (theta < kIndepEps) return v;
    double ls = clayton_log_s(theta, u, v);
    return std::exp(-(theta + 1.0) * std::log(u) - (1.0 / theta + 1.0) * ls);
}

// ---------------------------------------------------------------------------
// Gumbel
// ---------------------------------------------------------------------------

struct GumbelParts {
    double lu, lv;   // -log u, -log v
    double ls;       // log( (-log u)^theta + (-log v)^theta )
    double a;        // S^(1/theta)
};

GumbelParts gumbel_parts(double theta, double u, double v) {
    GumbelParts p;
    p.lu = -std::log(u);
    p.lv = -std::log(v);
    p.ls = logsumexp2(theta * std::log(p.lu), theta * std::log(p.lv));
    p.a = std::exp(p.ls / theta);
    return p;
}

double gumbel_cdf(double theta, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (theta - 1.0 < kIndepEps) return u * v;
    return std::exp(-gumbel_parts(theta, u, v).a);
}

double gumbel_log_density(double theta, double u, double v) {
    if (theta - 1.0 < kIndepEps) return 0.0;
    GumbelParts p = gumbel_parts(theta, u, v);
    return -p.a + (theta - 1.0) * (std::log(p.lu) + std::log(p.lv)) + p.lu + p.lv +
           (2.0 / theta - 2.0) * p.ls + std::log1p((theta - 1.0) / p.a);
}

double gumbel_conditional(double theta, double v, double u) {
    // dC/du = C(u,v) * S^(1/theta-1) * (-log u)^(theta-1) / u
    if (theta - 1.0 < kIndepEps) return v;
    GumbelParts p = gumbel_parts(theta, u, v);
    return std::exp(-p.a + (1.0 / theta - 1.0) * p.ls + (theta - 1.0) * std::log(p.lu) + p.lu);
}

// ---------------------------------------------------------------------------
// Gaussian
// ---------------------------------------------------------------------------

double gaussian_log_density(double rho, double u, double v) {
    double x = norm_quantile(u), y = norm_quantile(v);
    double r2 = 1.0 - rho * rho;
    return -0.5 * std::log(r2) +
           (2.0 * rho * x * y - rho * rho * (x * x + y * y)) / (2.0 * r2);
}

// ---------------------------------------------------------------------------
// Student t
// ---------------------------------------------------------------------------

double bvt_log_pdf(double x, double y, double rho, double dof) {
    double r2 = 1.0 - rho * rho;
    double q = (x * x - 2.0 * rho * x * y + y * y) / (dof * r2);
    return std::lgamma(0.5 * (dof + 2.0)) - std::lgamma(0.5 * dof) - std::log(dof * M_PI) -
           0.5 * std::log(r2) - 0.5 * (dof + 2.0) * std::log1p(q);
}

double t_log_density(double rho, double dof, double u, double v) {
    double x = student_t_quantile(u, dof);
    double y = student_t_quantile(v, dof);
    return bvt_log_pdf(x, y, rho, dof) - std::log(student_t_pdf(x, dof)) -
           std::log(student_t_pdf(y, dof));
}

double t_conditional(double rho, double dof, double v, double u) {
    // T | U=u is a scaled/shifted t with dof+1 degrees of freedom.
    double x = student_t_quantile(u, dof);
    double y = student_t_quantile(v, dof);
    double scale = std::sqrt((dof + x * x) * (1.0 - rho * rho) / (dof + 1.0));
    return student_t_cdf((y - rho * x) / scale, dof + 1.0);
}

// ---------------------------------------------------------------------------
// Joe-Clayton (BB7) and its symmetrization
// ---------------------------------------------------------------------------

struct JcParams {
    double kappa; // 1 / log2(2 - lambda_u), >= 1
    double gamma; // -1 / log2(lambda_l), > 0
};

JcParams jc_params(double lambda_u, double lambda_l) {
    JcParams p;
    p.kappa = 1.0 / std::log2(2.0 - lambda_u);
    p.gamma = -1.0 / std::log2(lambda_l);
    return p;
}

struct JcParts {
    double lx, ly; // log x, log y with x = 1 - (1-u)^kappa
    double ls;     // log S, S = x^-gamma + y^-gamma - 1
    double lt;     // log T, T = S^(-1/gamma)
    double t;
    double log_xu, log_yv; // log dx/du, log dy/dv
};

JcParts jc_parts(const JcParams& p, double u, double v) {
    JcParts q;
    double l1mu = std::log1p(-u), l1mv = std::log1p(-v);
    q.lx = std::log(-std::expm1(p.kappa * l1mu));
    q.ly = std::log(-std::expm1(p.kappa * l1mv));
    double la = -p.gamma * q.lx, lb = -p.gamma * q.ly; // both >= 0
    double m = std::max(la, lb);
    q.ls = m + std::log(std::exp(la - m) + std::exp(lb - m) - std::exp(-m));
    q.lt = -q.ls / p.gamma;
    q.t = std::exp(q.lt);
    q.log_xu = std::log(p.kappa) + (p.kappa - 1.0) * l1mu;
    q.log_yv = std::log(p.kappa) + (p.kappa - 1.0) * l1mv;
    return q;
}

double jc_cdf(double lambda_u, double lambda_l, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    JcParams p = jc_params(lambda_u, lambda_l);
    JcParts q = jc_parts(p, u, v);
    return -std::expm1(std::log1p(-q.t) / p.kappa);
}

double jc_log_density(double lambda_u, double lambda_l, double u, double v) {
    JcParams p = jc_params(lambda_u, lambda_l);
    JcParts q = jc_parts(p, u, v);
    double l1mt = std::log1p(-q.t);
    double log_tu = (-1.0 / p.gamma - 1.0) * q.ls + (-p.gamma - 1.0) * q.lx + q.log_xu;
    double log_tv = (-1.0 / p.gamma - 1.0) * q.ls + (-p.gamma - 1.0) * q.ly + q.log_yv;
    double log_tuv = std::log1p(p.gamma) + (-1.0 / p.gamma - 2.0) * q.ls +
                     (-p.gamma - 1.0) * (q.lx + q.ly) + q.log_xu + q.log_yv;
    double term1 = (p.kappa > 1.0) ? std::log1p(-1.0 / p.kappa) + log_tu + log_tv
                                   : -std::numeric_limits<double>::infinity();
    double term2 = l1mt + log_tuv;
    return -std::log(p.kappa) + (1.0 / p.kappa - 2.0) * l1mt + logsumexp2(term1, term2);
}

double jc_conditional(double lambda_u, double lambda_l, double v, double u) {
    JcParams p = jc_params(lambda_u, lambda_l);
    JcParts q = jc_parts(p, u, v);
    double l1mt = std::log1p(-q.t);
    return std::exp((1.0 / p.kappa - 1.0) * l1mt + (-1.0 / p.gamma - 1.0) * q.ls +
                    (-p.gamma - 1.0) * q.lx + q.log_xu - std::log(p.kappa));
}

double sjc_cdf(double lambda_u, double lambda_l, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    // Patton's symmetrization: the rotated component swaps the tail roles.
    return 0.5 * (jc_cdf(lambda_u, lambda_l, u, v) +
                  jc_cdf(lambda_l, lambda_u, 1.0 - u, 1.0 - v) + u + v - 1.0);
}

double sjc_log_density(double lambda_u, double lambda_l, double u, double v) {
    double a = jc_log_density(lambda_u, lambda_l, u, v);
    double b = jc_log_density(lambda_l, lambda_u, 1.0 - u, 1.0 - v);
    return std::log(0.5) + logsumexp2(a, b);
}

double sjc_conditional(double lambda_u, double lambda_l, double v, double u) {
    return 0.5 * (jc_conditional(lambda_u, lambda_l, v, u) + 1.0 -
                  jc_conditional(lambda_l, lambda_u, 1.0 - v, 1.0 - u));
}

// Conditional inversion for one JC component.
double jc_sample_v(double lambda_u, double lambda_l, double u, double w) {
    double lo = 1e-14, hi = 1.0 - 1e-14;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (jc_conditional(lambda_u, lambda_l, mid, u) < w)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// One-sided positive stable draw with Laplace transform exp(-s^alpha),
// Kanter's representation.
double sample_positive_stable(double alpha, Philox& rng) {
    double vangle = M_PI * rng.next_double();
    double e = sample_exponential(rng);
    double log_a = std::log(std::sin((1.0 - alpha) * vangle)) +
                   (alpha / (1.0 - alpha)) * std::log(std::sin(alpha * vangle)) -
                   (1.0 / (1.0 - alpha)) * std::log(std::sin(vangle));
    return std::exp(((1.0 - alpha) / alpha) * (log_a - std::log(e)));
}

} // namespace

std::string to_string(CopulaTag tag) {
    switch (tag) {
        case CopulaTag::gaussian: return "gaussian";
        case CopulaTag::clayton: return "clayton";
        case CopulaTag::gumbel: return "gumbel";
        case CopulaTag::t: return "t";
        case CopulaTag::sjc: return "sjc";
    }
    return "?";
}

CopulaTag copula_tag_from_string(const std::string& name) {
    if (name == "gaussian") return CopulaTag::gaussian;
    if (name == "clayton") return CopulaTag::clayton;
    if (name == "gumbel") return CopulaTag::gumbel;
    if (name == "t") return CopulaTag::t;
    if (name == "sjc") return CopulaTag::sjc;
    throw ValidationError("unknown copula family '" + name + "'");
}

int param_count(CopulaTag tag) {
    switch (tag) {
        case CopulaTag::gaussian:
        case CopulaTag::clayton:
        case CopulaTag::gumbel: return 1;
        case CopulaTag::t:
        case CopulaTag::sjc: return 2;
    }
    return 0;
}

std::vector<std::string> param_names(CopulaTag tag) {
    switch (tag) {
        case CopulaTag::gaussian: return {"rho"};
        case CopulaTag::clayton: return {"theta"};
        case CopulaTag::gumbel: return {"theta"};
        case CopulaTag::t: return {"rho", "dof"};
        case CopulaTag::sjc: return {"lambda_u", "lambda_l"};
    }
    return {};
}

void validate_copula(const Copula& c) {
    if (c.params.size() != param_count(c.tag))
        throw ValidationError("copula '" + to_string(c.tag) + "': expected " +
                              std::to_string(param_count(c.tag)) + " parameter(s)");
    auto bad = [&](const std::string& what) {
        throw ValidationError("copula '" + to_string(c.tag) + "': " + what);
    };
    switch (c.tag) {
        case CopulaTag::gaussian:
            if (!(c.params[0] > -1.0 && c.params[0] < 1.0)) bad("rho must be in (-1,1)");
            break;
        case CopulaTag::clayton:
            if (!(c.params[0] >= 0.0)) bad("theta must be >= 0");
            break;
        case CopulaTag::gumbel:
            if (!(c.params[0] >= 1.0)) bad("theta must be >= 1");
            break;
        case CopulaTag::t:
            if (!(c.params[0] > -1.0 && c.params[0] < 1.0)) bad("rho must be in (-1,1)");
            if (!(c.params[1] > 2.0)) bad("dof must exceed 2");
            break;
        case CopulaTag::sjc:
            if (!(c.params[0] > 0.0 && c.params[0] < 1.0 && c.params[1] > 0.0 && c.params[1] < 1.0))
                bad("(lambda_u, lambda_l) must be in (0,1)^2");
            break;
    }
}

Copula make_copula(CopulaTag tag, const Eigen::VectorXd& params) {
    Copula c{tag, params};
    validate_copula(c);
    return c;
}

Copula make_copula(CopulaTag tag, std::initializer_list<double> params) {
    Eigen::VectorXd p(static_cast<int>(params.size()));
    int i = 0;
    for (double v : params) p[i++] = v;
    return make_copula(tag, p);
}

double copula_cdf(const Copula& c, double u, double v) {
    validate_copula(c);
    check_unit_square(u, v, false);
    switch (c.tag) {
        case CopulaTag::gaussian: {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            if (u >= 1.0) return v;
            if (v >= 1.0) return u;
            return bvn_cdf(norm_quantile(u), norm_quantile(v), c.params[0]);
        }
        case CopulaTag::clayton: return clayton_cdf(c.params[0], u, v);
        case CopulaTag::gumbel: return gumbel_cdf(c.params[0], u, v);
        case CopulaTag::t: {
            if (u <= 0.0 || v <= 0.0) return 0.0;
            if (u >= 1.0) return v;
            if (v >= 1.0) return u;
            double dof = c.params[1];
            return bvt_cdf(student_t_quantile(u, dof), student_t_quantile(v, dof), c.params[0],
                           dof);
        }
        case CopulaTag::sjc: return sjc_cdf(c.params[0], c.params[1], u, v);
    }
    throw NumericalError("unreachable copula tag");
}

double copula_log_density(const Copula& c, double u, double v) {
    validate_copula(c);
    check_unit_square(u, v, true);
    switch (c.tag) {
        case CopulaTag::gaussian: return gaussian_log_density(c.params[0], u, v);
        case CopulaTag::clayton: return clayton_log_density(c.params[0], u, v);
        case CopulaTag::gumbel: return gumbel_log_density(c.params[0], u, v);
        case CopulaTag::t: return t_log_density(c.params[0], c.params[1], u, v);
        case CopulaTag::sjc: return sjc_log_density(c.params[0], c.params[1], u, v);
    }
    throw NumericalError("unreachable copula tag");
}

double copula_conditional_cdf(const Copula& c, double v, double u) {
    validate_copula(c);
    check_unit_square(u, v, true);
    switch (c.tag) {
        case CopulaTag::gaussian: {
            double x = norm_quantile(u), y = norm_quantile(v);
            double r = c.params[0];
            return norm_cdf((y - r * x) / std::sqrt(1.0 - r * r));
        }
        case CopulaTag::clayton: return clayton_conditional(c.params[0], v, u);
        case CopulaTag::gumbel: return gumbel_conditional(c.params[0], v, u);
        case CopulaTag::t: return t_conditional(c.params[0], c.params[1], v, u);
        case CopulaTag::sjc: return sjc_conditional(c.params[0], c.params[1], v, u);
    }
    throw NumericalError("unreachable copula tag");
}

TailCoefficients tail_coefficients(const Copula& c) {
    validate_copula(c);
    TailCoefficients tc;
    switch (c.tag) {
        case CopulaTag::gaussian:
            break; // (0,0) for |rho| < 1
        case CopulaTag::clayton:
            tc.lower = (c.params[0] < kIndepEps) ? 0.0 : std::exp2(-1.0 / c.params[0]);
            break;
        case CopulaTag::gumbel:
            tc.upper = 2.0 - std::exp2(1.0 / c.params[0]);
            break;
        case CopulaTag::t: {
            double rho = c.params[0], dof = c.params[1];
            double arg = -std::sqrt((dof + 1.0) * (1.0 - rho) / (1.0 + rho));
            double lam = 2.0 * student_t_cdf(arg, dof + 1.0);
            tc.lower = tc.upper = lam;
            break;
        }
        case CopulaTag::sjc:
            tc.upper = c.params[0];
            tc.lower = c.params[1];
            break;
    }
    return tc;
}

namespace {

double checked_quadrature(const std::function<double(int)>& value_at, const QuadratureOptions& opts,
                          const char* what) {
    double coarse = value_at(opts.n);
    double fine = value_at(opts.check_n);
    double achieved = std::abs(fine - coarse);
    if (achieved > opts.tol)
        throw NumericalError(std::string(what) + ": quadrature check failed, achieved tolerance " +
                             std::to_string(achieved) + " exceeds " + std::to_string(opts.tol));
    return fine;
}

} // namespace

double kendall_tau_quadrature(const Copula& c, const QuadratureOptions& opts) {
    validate_copula(c);
    auto value_at = [&](int n) {
        double integral = integrate_unit_square(
            [&](double u, double v) {
                return copula_cdf(c, u, v) * std::exp(copula_log_density(c, u, v));
            },
            n);
        return 4.0 * integral - 1.0;
    };
    return checked_quadrature(value_at, opts, "kendall_tau");
}

double spearman_rho_quadrature(const Copula& c, const QuadratureOptions& opts) {
    validate_copula(c);
    auto value_at = [&](int n) {
        return 12.0 * integrate_unit_square([&](double u, double v) { return copula_cdf(c, u, v); },
                                            n) -
               3.0;
    };
    return checked_quadrature(value_at, opts, "spearman_rho");
}

RankCorrelations rank_correlations(const Copula& c, const QuadratureOptions& opts) {
    validate_copula(c);
    RankCorrelations rc;
    switch (c.tag) {
        case CopulaTag::gaussian: {
            double rho = c.params[0];
            rc.kendall_tau = 2.0 * std::asin(rho) / M_PI;
            rc.spearman_rho = 6.0 * std::asin(0.5 * rho) / M_PI;
            return rc;
        }
        case CopulaTag::t:
            rc.kendall_tau = 2.0 * std::asin(c.params[0]) / M_PI;
            rc.spearman_rho = spearman_rho_quadrature(c, opts);
            return rc;
        case CopulaTag::clayton: {
            double theta = c.params[0];
            rc.kendall_tau = (theta < kIndepEps) ? 0.0 : theta / (theta + 2.0);
            rc.spearman_rho = (theta < kIndepEps) ? 0.0 : spearman_rho_quadrature(c, opts);
            return rc;
        }
        case CopulaTag::gumbel:
            rc.kendall_tau = 1.0 - 1.0 / c.params[0];
            rc.spearman_rho =
                (c.params[0] - 1.0 < kIndepEps) ? 0.0 : spearman_rho_quadrature(c, opts);
            return rc;
        case CopulaTag::sjc:
            rc.kendall_tau = kendall_tau_quadrature(c, opts);
            rc.spearman_rho = spearman_rho_quadrature(c, opts);
            return rc;
    }
    throw NumericalError("unreachable copula tag");
}

Eigen::MatrixX2d sample_copula(const Copula& c, int n, Philox& rng) {
    validate_copula(c);
    if (n <= 0) throw ValidationError("sample_copula: n must be positive");
    Eigen::MatrixX2d out(n, 2);
    switch (c.tag) {
        case CopulaTag::gaussian: {
            double rho = c.params[0], s = std::sqrt(1.0 - rho * rho);
            for (int i = 0; i < n; ++i) {
                double z1 = sample_normal(rng), z2 = sample_normal(rng);
                out(i, 0) = norm_cdf(z1);
                out(i, 1) = norm_cdf(rho * z1 + s * z2);
            }
            break;
        }
        case CopulaTag::t: {
            double rho = c.params[0], dof = c.params[1], s = std::sqrt(1.0 - rho * rho);
            for (int i = 0; i < n; ++i) {
                double z1 = sample_normal(rng), z2 = sample_normal(rng);
                double w = 2.0 * sample_gamma(0.5 * dof, rng) / dof;
                double scale = 1.0 / std::sqrt(w);
                out(i, 0) = student_t_cdf(z1 * scale, dof);
                out(i, 1) = student_t_cdf((rho * z1 + s * z2) * scale, dof);
            }
            break;
        }
        case CopulaTag::clayton: {
            double theta = c.params[0];
            for (int i = 0; i < n; ++i) {
                if (theta < kIndepEps) {
                    out(i, 0) = rng.next_double();
                    out(i, 1) = rng.next_double();
                    continue;
                }
                // Marshall-Olkin with a gamma frailty.
                double frailty = sample_gamma(1.0 / theta, rng);
                for (int j = 0; j < 2; ++j) {
                    double e = sample_exponential(rng);
                    out(i, j) = std::exp(-std::log1p(e / frailty) / theta);
                }
            }
            break;
        }
        case CopulaTag::gumbel: {
            double theta = c.params[0];
            for (int i = 0; i < n; ++i) {
                if (theta - 1.0 < kIndepEps) {
                    out(i, 0) = rng.next_double();
                    out(i, 1) = rng.next_double();
                    continue;
                }
                // Positive-stable frailty.
                double frailty = sample_positive_stable(1.0 / theta, rng);
                for (int j = 0; j < 2; ++j) {
                    double e = sample_exponential(rng);
                    out(i, j) = std::exp(-std::pow(e / frailty, 1.0 / theta));
                }
            }
            break;
        }
        case CopulaTag::sjc: {
            double lu = c.params[0], ll = c.params[1];
            for (int i = 0; i < n; ++i) {
                // Equal-weight mixture of the two Joe-Clayton components.
                bool rotated = rng.next_double() < 0.5;
                double a = rng.next_double(), w = rng.next_double();
                if (!rotated) {
                    out(i, 0) = a;
                    out(i, 1) = jc_sample_v(lu, ll, a, w);
                } else {
                    out(i, 0) = 1.0 - a;
                    out(i, 1) = 1.0 - jc_sample_v(ll, lu, a, w);
                }
            }
            break;
        }
    }
    // Keep draws strictly interior so downstream PIT-space code never sees 0/1.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = std::clamp(out(i, j), 1e-15, 1.0 - 1e-15);
    return out;
}

Eigen::MatrixX2d sample_copula(const Copula& c, int n, std::uint64_t seed) {
    Philox rng(seed);
    return sample_copula(c, n, rng);
}

} // namespace newsdep
