#pragma once

#include <cstddef>

namespace textnet {

// Inverse of the standard normal CDF (Wichura's PPND16), |error| < 1e-15.
double inverse_normal_cdf(double p);

// erfc^{-1}, expressed through the inverse normal CDF.
double erfc_inv(double q);

// Regularized lower incomplete gamma P(a, x).
double reg_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double reg_beta(double a, double b, double x);

// Digamma (psi) function for x > 0.
double digamma(double x);

// Kolmogorov distribution survival function Q(lambda) = P(K > lambda).
double kolmogorov_sf(double lambda);

// Two-sided p-value for a t statistic with nu degrees of freedom.
double student_t_two_sided_p(double t, double nu);

// CDF of the standard normal.
double normal_cdf(double x);

}  // namespace textnet
