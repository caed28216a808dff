#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wscale/matrix.hpp"
#include "wscale/robust.hpp"

namespace wscale {

enum class ScaleMethod { Auto, Range, Pareto, Vast, Level, Weighted };

// "auto range pareto vast level weighted"
const std::vector<std::string>& scale_method_names();
ScaleMethod parse_scale_method(std::string_view name);  // schema_error on unknown
const char* scale_method_name(ScaleMethod m);

struct ScalingMethod {
  ScaleMethod tag = ScaleMethod::Auto;
  RobustParams params = RobustParams::make();  // used by weighted only
};

// Per-row transform fitted on one set of values and applicable to any cell,
// including cells not seen at fit time (fold-hygienic evaluation fits on
// training columns only and applies to held-out columns).
struct RowScaler {
  ScaleMethod tag = ScaleMethod::Auto;
  bool flagged = false;  // degenerate denominator; apply() returns 0

  // affine methods: (x - center) / scale * factor
  double center = 0.0;
  double scale = 1.0;
  double factor = 1.0;

  // weighted method state
  double med = 0.0;
  double mad_value = 0.0;
  double wmean = 0.0;
  double wsd = 1.0;
  double z2 = 0.0;

  static RowScaler fit(ScaleMethod tag, std::span<const double> x, const RobustParams& p);
  double apply(double x) const;
};

// Fit-and-apply on the same row; each method's single-row transform.
std::vector<double> scale_row(ScaleMethod tag, std::span<const double> x, const RobustParams& p);

std::vector<double> auto_scale_row(std::span<const double> x);
std::vector<double> range_scale_row(std::span<const double> x);
std::vector<double> pareto_scale_row(std::span<const double> x);
std::vector<double> vast_scale_row(std::span<const double> x);
std::vector<double> level_scale_row(std::span<const double> x);
std::vector<double> weighted_scale_row(std::span<const double> x, const RobustParams& p);

// Whole-matrix transform; rows are independent. Degenerate rows become zeros
// and are reported in the result's flags, never an error.
ScaledMatrix scale(const MetaboliteMatrix& m, const ScalingMethod& method);

// Sample mean and (n-1)-denominator standard deviation.
double mean_of(std::span<const double> x);
double sample_sd(std::span<const double> x);

}  // namespace wscale
