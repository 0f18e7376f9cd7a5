#include "newsdep/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>

#include "newsdep/errors.hpp"
#include "newsdep/quadrature.hpp"

namespace newsdep {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;
constexpr double kLogSqrt2Pi = 0.9189385332046727;
} // namespace

double norm_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("norm_quantile: p must be in (0,1)");
    // Acklam's rational approximation, then one Halley refinement.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = norm_cdf(x) - p;
    double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

namespace {

double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw ValidationError("gamma_p: a must be positive");
    if (x < 0.0) throw ValidationError("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_contfrac(a, x);
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

} // namespace

double inc_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw ValidationError("inc_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double inc_beta_inv(double p, double a, double b) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double x;
    if (a >= 1.0 && b >= 1.0) {
        double pp = (p < 0.5) ? p : 1.0 - p;
        double t = std::sqrt(-2.0 * std::log(pp));
        double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if (p < 0.5) z = -z;
        double al = (z * z - 3.0) / 6.0;
        double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
        double w = z * std::sqrt(al + h) / h -
                   (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
        x = a / (a + b * std::exp(2.0 * w));
    } else {
        double lna = std::log(a / (a + b)), lnb = std::log(b / (a + b));
        double t = std::exp(a * lna) / a, u = std::exp(b * lnb) / b, w = t + u;
        x = (p < t / w) ? std::pow(a * w * p, 1.0 / a) : 1.0 - std::pow(b * w * (1.0 - p), 1.0 / b);
    }
    double afac = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    for (int j = 0; j < 12; ++j) {
        if (x <= 0.0 || x >= 1.0) {
            x = std::clamp(x, 1e-300, 1.0 - 1e-16);
        }
        double err = inc_beta(a, b, x) - p;
        double t = std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) + afac);
        double u = err / t;
        double step = u / (1.0 - 0.5 * std::min(1.0, u * ((a - 1.0) / x - (b - 1.0) / (1.0 - x))));
        double xnew = x - step;
        if (xnew <= 0.0) xnew = 0.5 * x;
        if (xnew >= 1.0) xnew = 0.5 * (x + 1.0);
        if (std::abs(xnew - x) < 1e-15 * x) { x = xnew; break; }
        x = xnew;
    }
    return x;
}

double gamma_quantile(double p, double a) {
    if (a <= 0.0) throw ValidationError("gamma_quantile: shape must be positive");
    if (!(p >= 0.0 && p < 1.0)) throw ValidationError("gamma_quantile: p must be in [0,1)");
    if (p == 0.0) return 0.0;
    double x;
    if (a > 0.5) {
        // Wilson-Hilferty start.
        double z = norm_quantile(p);
        double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
        x = a * t * t * t;
        if (x <= 0.0) x = 1e-8;
    } else {
        x = std::exp((std::log(p) + std::lgamma(a + 1.0)) / a);
    }
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 100; ++it) {
        double f = gamma_p(a, x) - p;
        if (f > 0.0) hi = std::min(hi, x); else lo = std::max(lo, x);
        double logpdf = (a - 1.0) * std::log(x) - x - std::lgamma(a);
        double step = f * std::exp(-logpdf);
        double xnew = x - step;
        if (!(xnew > lo && (xnew < hi))) // bisect when Newton leaves the bracket
            xnew = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
        if (std::abs(xnew - x) <= 1e-14 * std::max(1.0, x)) { x = xnew; break; }
        x = xnew;
    }
    return x;
}

double chi2_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x);
}

double student_t_pdf(double x, double dof) {
    if (dof <= 0.0) throw ValidationError("student_t_pdf: dof must be positive");
    double lg = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                0.5 * std::log(dof * M_PI);
    return std::exp(lg - 0.5 * (dof + 1.0) * std::log1p(x * x / dof));
}

double student_t_cdf(double x, double dof) {
    if (dof <= 0.0) throw ValidationError("student_t_cdf: dof must be positive");
    if (x == 0.0) return 0.5;
    double p = 0.5 * inc_beta(0.5 * dof, 0.5, dof / (dof + x * x));
    return (x > 0.0) ? 1.0 - p : p;
}

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("student_t_quantile: p must be in (0,1)");
    if (p == 0.5) return 0.0;
    double pp = (p < 0.5) ? p : 1.0 - p;
    double w = inc_beta_inv(2.0 * pp, 0.5 * dof, 0.5);
    double x = std::sqrt(dof * (1.0 - w) / std::max(w, 1e-300));
    return (p < 0.5) ? -x : x;
}

namespace {

// Gauss-Legendre pairs used by the bivariate normal integration.
const double kBvnW[3][10] = {
    {0.1713244923791705, 0.3607615730481384, 0.4679139345726904, 0, 0, 0, 0, 0, 0, 0},
    {0.04717533638651177, 0.1069393259953183, 0.1600783285433464, 0.2031674267230659,
     0.2334925365383547, 0.2491470458134029, 0, 0, 0, 0},
    {0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
     0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183821,
     0.1491729864726037, 0.1527533871307259}};
const double kBvnX[3][10] = {
    {0.9324695142031522, 0.6612093864662647, 0.2386191860831970, 0, 0, 0, 0, 0, 0, 0},
    {0.9815606342467191, 0.9041172563704750, 0.7699026741943050, 0.5873179542866171,
     0.3678314989981802, 0.1252334085114692, 0, 0, 0, 0},
    {0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
     0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
     0.2277858511416451, 0.07652652113349733}};

// Genz (2004): P(X > h, Y > k) for standard bivariate normal.
double bvnu(double h, double k, double r) {
    if (h > 37.5 || k > 37.5) return 0.0;
    if (h < -37.5 && k < -37.5) return 1.0;
    int lg, ng;
    if (std::abs(r) < 0.3) { ng = 0; lg = 3; }
    else if (std::abs(r) < 0.75) { ng = 1; lg = 6; }
    else { ng = 2; lg = 10; }
    double hk = h * k, bvn = 0.0;
    if (std::abs(r) < 0.925) {
        if (std::abs(r) > 0.0) {
            double hs = 0.5 * (h * h + k * k);
            double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    double sn = std::sin(asr * (is * kBvnX[ng][i] + 1.0) * 0.5);
                    bvn += kBvnW[ng][i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (4.0 * M_PI);
        }
        bvn += norm_cdf(-h) * norm_cdf(-k);
    } else {
        if (r < 0.0) { k = -k; hk = -hk; }
        if (std::abs(r) < 1.0) {
            double as = (1.0 - r) * (1.0 + r), a = std::sqrt(as);
            double bs = (h - k) * (h - k);
            double c = (4.0 - hk) / 8.0, d = (12.0 - hk) / 16.0;
            double asr = -0.5 * (bs / as + hk);
            if (asr > -100.0)
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
            if (-hk < 100.0) {
                double b = std::sqrt(bs);
                bvn -= std::exp(-0.5 * hk) * kSqrt2Pi * norm_cdf(-b / a) * b *
                       (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a *= 0.5;
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    double x = a * (is * kBvnX[ng][i] + 1.0);
                    double xs = x * x;
                    double rs = std::sqrt(1.0 - xs);
                    double asr1 = -0.5 * (bs / xs + hk);
                    if (asr1 > -100.0) {
                        bvn += a * kBvnW[ng][i] * std::exp(asr1) *
                               (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                                (1.0 + c * xs * (1.0 + d * xs)));
                    }
                }
            }
            bvn = -bvn / (2.0 * M_PI);
        }
        if (r > 0.0) {
            bvn += norm_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
        }
    }
    return std::clamp(bvn, 0.0, 1.0);
}

} // namespace

double bvn_cdf(double h, double k, double rho) {
    if (!(rho > -1.0 && rho < 1.0)) {
        if (rho >= 1.0) return norm_cdf(std::min(h, k));
        if (rho <= -1.0) return std::max(0.0, norm_cdf(h) + norm_cdf(k) - 1.0);
    }
    return bvnu(-h, -k, rho);
}

namespace {

// Mixing nodes for the bivariate t: Gauss-Legendre nodes pushed through the
// Gamma(dof/2) quantile so that E[f(S)] = int_0^1 f(Q(u)) du. The transformed
// integrand is smooth and flat at both ends, which the Legendre rule resolves
// far better than Laguerre does for these bounded integrands.
const Eigen::VectorXd& bvt_mixing_nodes(double dof) {
    static std::map<long long, Eigen::VectorXd> cache;
    static std::mutex mutex;
    long long bits;
    std::memcpy(&bits, &dof, sizeof(bits));
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(bits);
    if (it != cache.end()) return it->second;
    if (cache.size() > 128) cache.clear();
    const QuadRule& rule = gauss_legendre_01(96);
    Eigen::VectorXd nodes(rule.nodes.size());
    for (int i = 0; i < rule.nodes.size(); ++i)
        nodes[i] = gamma_quantile(rule.nodes[i], 0.5 * dof);
    return cache.emplace(bits, std::move(nodes)).first->second;
}

} // namespace

double bvt_cdf(double x, double y, double rho, double dof) {
    if (dof <= 0.0) throw ValidationError("bvt_cdf: dof must be positive");
    // Condition on the chi-square mixing variable W ~ chi2(dof) = 2S:
    // P = E[ bvn_cdf(x sqrt(W/dof), y sqrt(W/dof); rho) ].
    const Eigen::VectorXd& nodes = bvt_mixing_nodes(dof);
    const QuadRule& rule = gauss_legendre_01(static_cast<int>(nodes.size()));
    double p = 0.0;
    for (int i = 0; i < nodes.size(); ++i) {
        double scale = std::sqrt(2.0 * nodes[i] / dof);
        p += rule.weights[i] * bvn_cdf(x * scale, y * scale, rho);
    }
    return std::clamp(p, 0.0, 1.0);
}

double kolmogorov_pvalue(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Complement of the theta-series form, stable for small lambda.
        double t = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
        double cdf = kSqrt2Pi / lambda * (t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double sample_normal(Philox& rng) { return norm_quantile(rng.next_double()); }

double sample_exponential(Philox& rng) { return -std::log(rng.next_double()); }

double sample_gamma(double shape, Philox& rng) {
    if (shape <= 0.0) throw ValidationError("sample_gamma: shape must be positive");
    // Marsaglia-Tsang; shapes below one use the boost trick.
    if (shape < 1.0) {
        double u = rng.next_double();
        return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z = sample_normal(rng);
        double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = rng.next_double();
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
    }
}

long sample_poisson(double mean, Philox& rng) {
    if (mean < 0.0) throw ValidationError("sample_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 60.0) {
        double limit = std::exp(-mean), prod = rng.next_double();
        long n = 0;
        while (prod > limit) {
            prod *= rng.next_double();
            ++n;
        }
        return n;
    }
    // Split large means; counts stay exact and the recursion depth is small.
    long half = sample_poisson(0.5 * mean, rng);
    return half + sample_poisson(mean - 0.5 * mean, rng);
}

} // namespace newsdep
