#pragma once

#include "wscale/rng.hpp"

namespace wscale {

// Standard-normal quantile (inverse CDF). Accurate to full double precision.
double normal_quantile(double p);

// Standard-normal CDF.
double normal_cdf(double x);

// Two-sided Student-t survival helper: P(T_df <= t).
double students_t_cdf(double t, double df);

// N(mu, sigma^2) draw by inverse-CDF over one uniform from the stream.
double sample_normal(RngStream& rng, double mu, double sigma);

// Negative binomial draw by PMF inversion, failure-count parameterization:
//   pmf(k) = C(k+r-1, k) p^r (1-p)^k,  k = 0,1,2,...,  mean r(1-p)/p.
// r may be any positive real. Consumes exactly one uniform per draw.
double sample_negative_binomial(RngStream& rng, double r, double p);

}  // namespace wscale
