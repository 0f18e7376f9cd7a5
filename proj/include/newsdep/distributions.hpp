#pragma once

#include "newsdep/rng.hpp"

namespace newsdep {

double norm_pdf(double x);
double norm_cdf(double x);
// Inverse standard normal CDF, accurate to ~1e-15 after refinement.
double norm_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
// Inverse of gamma_p in x for fixed shape a.
double gamma_quantile(double p, double a);
// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);
// Inverse of inc_beta in x for fixed (a, b).
double inc_beta_inv(double p, double a, double b);

double chi2_cdf(double x, double dof);

double student_t_pdf(double x, double dof);
double student_t_cdf(double x, double dof);
double student_t_quantile(double p, double dof);

// Bivariate standard normal CDF P(X <= h, Y <= k) with correlation rho.
// Genz (2004) algorithm, absolute accuracy ~5e-16.
double bvn_cdf(double h, double k, double rho);

// Bivariate t CDF P(X <= x, Y <= y), correlation rho, dof > 0. Evaluated by
// integrating bvn_cdf against the chi-square mixing density with a
// generalized Gauss-Laguerre rule; absolute accuracy better than 1e-6.
double bvt_cdf(double x, double y, double rho, double dof);

// Upper tail of the Kolmogorov distribution: P(K > lambda).
double kolmogorov_pvalue(double lambda);

// Seeded samplers built on Philox; output depends only on the generator
// state, never on platform library internals.
double sample_normal(Philox& rng);
double sample_exponential(Philox& rng);
double sample_gamma(double shape, Philox& rng); // unit scale
long sample_poisson(double mean, Philox& rng);

} // namespace newsdep
