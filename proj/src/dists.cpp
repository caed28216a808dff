#include "wscale/dists.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

#include "wscale/errors.hpp"

namespace wscale {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  }
  static const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
  return boost::math::quantile(std_normal, p);
}

double normal_cdf(double x) {
  static const boost::math::normal_distribution<double> std_normal(0.0, 1.0);
  return boost::math::cdf(std_normal, x);
}

double students_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("students_t_cdf: df must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const boost::math::students_t_distribution<double> dist(df);
  return boost::math::cdf(dist, t);
}

double sample_normal(RngStream& rng, double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_normal: sigma must be positive");
  return mu + sigma * normal_quantile(rng.next_open_unit());
}

double sample_negative_binomial(RngStream& rng, double r, double p) {
  if (!(r > 0.0) || !(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("sample_negative_binomial: need r > 0 and p in (0, 1)");
  }
  const double u = rng.next_open_unit();
  double pmf = std::exp(r * std::log(p));
  if (pmf <= 0.0) {
    throw numeric_error("sample_negative_binomial: pmf(0) underflows for these parameters");
  }
  double cdf = pmf;
  double k = 0.0;
  // Inversion walk; u < 1 strictly, so the loop terminates once cdf -> 1.
  // The cap guards pathological parameter choices.
  constexpr double kMaxSteps = 1e7;
  while (u > cdf && k < kMaxSteps) {
    pmf *= (k + r) / (k + 1.0) * (1.0 - p);
    k += 1.0;
    cdf += pmf;
    if (pmf == 0.0) break;  // tail mass below machine epsilon
  }
  return k;
}

}  // namespace wscale
