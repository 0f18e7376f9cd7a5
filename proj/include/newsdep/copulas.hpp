#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "newsdep/rng.hpp"

namespace newsdep {

enum class CopulaTag { gaussian, clayton, gumbel, t, sjc };

std::string to_string(CopulaTag tag);
CopulaTag copula_tag_from_string(const std::string& name);

// A copula family with parameters inside its admissible region:
//   gaussian: rho in (-1,1)
//   clayton:  theta >= 0            (theta = 0 is the independence limit)
//   gumbel:   theta >= 1
//   t:        rho in (-1,1), dof > 2
//   sjc:      (lambda_u, lambda_l) each in (0,1)
struct Copula {
    CopulaTag tag = CopulaTag::gaussian;
    Eigen::VectorXd params;
};

Copula make_copula(CopulaTag tag, const Eigen::VectorXd& params);
Copula make_copula(CopulaTag tag, std::initializer_list<double> params);
void validate_copula(const Copula& c); // throws ValidationError outside the region

int param_count(CopulaTag tag);
std::vector<std::string> param_names(CopulaTag tag);

// C(u,v) on the closed unit square.
double copula_cdf(const Copula& c, double u, double v);

// log of the copula density; (u,v) must be strictly interior.
double copula_log_density(const Copula& c, double u, double v);

// Conditional distribution P(V <= v | U = u), the h-function.
double copula_conditional_cdf(const Copula& c, double v, double u);

struct TailCoefficients {
    double lower = 0.0;
    double upper = 0.0;
};
TailCoefficients tail_coefficients(const Copula& c);

struct RankCorrelations {
    double kendall_tau = 0.0;
    double spearman_rho = 0.0;
};

struct QuadratureOptions {
    int n = 64;       // base tensor rule
    int check_n = 128; // refinement used as the convergence check
    double tol = 1e-4;
};

// Closed forms where available (clayton, gumbel, gaussian/t tau; gaussian
// rho_s); otherwise tensor quadrature of the defining integrals with a
// refinement check. Throws NumericalError when the check fails.
RankCorrelations rank_correlations(const Copula& c, const QuadratureOptions& opts = {});

// Quadrature-only evaluations of the defining integrals, used to cross-check
// the closed forms.
double kendall_tau_quadrature(const Copula& c, const QuadratureOptions& opts = {});
double spearman_rho_quadrature(const Copula& c, const QuadratureOptions& opts = {});

// n iid pairs with uniform margins, bit-identical for a given generator state.
Eigen::MatrixX2d sample_copula(const Copula& c, int n, Philox& rng);
Eigen::MatrixX2d sample_copula(const Copula& c, int n, std::uint64_t seed);

} // namespace newsdep
