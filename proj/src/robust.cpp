#include "wscale/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wscale/dists.hpp"

namespace wscale {

RobustParams RobustParams::make(double alpha, double mad_constant) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw std::invalid_argument("RobustParams: alpha must lie in (0, 0.5)");
  }
  if (!(mad_constant > 0.0)) {
    throw std::invalid_argument("RobustParams: mad_constant must be positive");
  }
  RobustParams p;
  p.alpha = alpha;
  p.mad_constant = mad_constant;
  p.z_alpha = normal_quantile(1.0 - alpha);
  return p;
}

double median(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("median: empty input");
  std::vector<double> tmp(x.begin(), x.end());
  const std::size_t mid = tmp.size() / 2;
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid), tmp.end());
  double med = tmp[mid];
  if (tmp.size() % 2 == 0) {
    const double lower = *std::max_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(mid));
    med = 0.5 * (med + lower);
  }
  return med;
}

double mad(std::span<const double> x, const RobustParams& p) {
  if (x.size() < 2) throw std::invalid_argument("mad: need at least two values");
  const double med = median(x);
  std::vector<double> dev(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dev[i] = std::fabs(x[i] - med);
  return median(dev) / p.mad_constant;
}

double cell_weight(double x, double row_median, double row_mad, const RobustParams& p) {
  if (row_mad < 0.0) throw std::invalid_argument("cell_weight: mad must be nonnegative");
  if (row_mad == 0.0) return 1.0;  // degenerate row: >50% identical values
  const double dev = (x - row_median) / row_mad;
  const double dev2 = dev * dev;
  if (dev2 == 0.0) return 1.0;
  return std::min(1.0, p.z_alpha * p.z_alpha / dev2);
}

std::vector<double> row_weights(std::span<const double> x, const RobustParams& p) {
  const double med = median(x);
  const double scale = mad(x, p);
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = cell_weight(x[i], med, scale, p);
  return w;
}

double weighted_mean(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("weighted_mean: length mismatch");
  if (x.empty()) throw std::invalid_argument("weighted_mean: empty input");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += w[i] * x[i];
    den += w[i];
  }
  return num / den;
}

double weighted_sd(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size()) throw std::invalid_argument("weighted_sd: length mismatch");
  if (x.empty()) throw std::invalid_argument("weighted_sd: empty input");
  const double center = weighted_mean(x, w);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = w[i] * x[i] - center;
    num += d * d;
    den += w[i];
  }
  return std::sqrt(num / den);
}

}  // namespace wscale
