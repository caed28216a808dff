#pragma once

#include <span>
#include <vector>

namespace wscale {

// Parameters of the robust weight function. The weight of a cell shrinks
// with its MAD-standardized distance from the row median once that distance
// passes the upper-alpha normal critical value.
struct RobustParams {
  double mad_constant = 0.6754;
  double alpha = 0.05;
  double z_alpha = 0.0;  // derived: (1 - alpha) standard-normal quantile

  static RobustParams make(double alpha = 0.05, double mad_constant = 0.6754);
};

// Middle order statistic; mean of the two middle values for even length.
double median(std::span<const double> x);

// Median absolute deviation scaled by 1/mad_constant. Needs length >= 2.
double mad(std::span<const double> x, const RobustParams& p);

// w = min(1, z_alpha^2 / ((x - median)/mad)^2), in (0, 1].
// Exactly 1 at zero deviation and for degenerate rows (mad == 0).
double cell_weight(double x, double row_median, double row_mad, const RobustParams& p);

// All cell weights for one row: median/mad once, then cell_weight per cell.
std::vector<double> row_weights(std::span<const double> x, const RobustParams& p);

// sum(w*x) / sum(w)
double weighted_mean(std::span<const double> x, std::span<const double> w);

// sqrt( sum((w*x - weighted_mean)^2) / sum(w) ); the weight multiplies the
// value inside the square.
double weighted_sd(std::span<const double> x, std::span<const double> w);

}  // namespace wscale
