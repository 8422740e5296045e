#pragma once

#include "banova/rng.hpp"

namespace banova::specfun {

// ln Gamma(x) for x > 0 via a Lanczos approximation (g = 7, 9 terms).
double ln_gamma(double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_inc_gamma_lower(double a, double x);

// Chi-square CDF with df degrees of freedom.
double chi2_cdf(double x, int df);

// Upper tail Pr(F_{d1,d2} > f) of the F distribution.
double f_upper_tail(double f, int d1, int d2);

// Quantile of the chi-square distribution: Pr(X <= q) = p, 0 < p < 1.
// Monotone bisection on the regularized incomplete gamma.
double chi2_quantile(double p, int df);

// N(mean, variance) draw; variance 0 returns mean exactly (Box-Muller).
double sample_normal(RngStream& rng, double mean, double variance);

// Gamma(shape, rate 1) draw via the Marsaglia-Tsang squeeze method, with
// the u^(1/a) boost for shape < 1.
double sample_gamma(RngStream& rng, double shape);

// Inverse-gamma draw with density proportional to x^(-u-1) exp(-v/x),
// realized as v / Gamma(u, rate 1).
double sample_inv_gamma(RngStream& rng, double u, double v);

} // namespace banova::specfun
