#include "wscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wscale/errors.hpp"

namespace wscale {

const std::vector<std::string>& scale_method_names() {
  static const std::vector<std::string> names = {"auto",  "range", "pareto",
                                                 "vast",  "level", "weighted"};
  return names;
}

ScaleMethod parse_scale_method(std::string_view name) {
  const auto& names = scale_method_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (name == names[i]) return static_cast<ScaleMethod>(i);
  }
  std::string all;
  for (const auto& n : names) {
    if (!all.empty()) all += ", ";
    all += n;
  }
  throw schema_error("unknown scaling method '" + std::string(name) + "' (expected one of: " +
                     all + ")");
}

const char* scale_method_name(ScaleMethod m) {
  return scale_method_names()[static_cast<std::size_t>(m)].c_str();
}

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
  const double m = mean_of(x);
  double acc = 0.0;
  for (double v : x) {
    const double d = v - m;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

RowScaler RowScaler::fit(ScaleMethod tag, std::span<const double> x, const RobustParams& p) {
  if (x.size() < 2) throw std::invalid_argument("RowScaler: need at least two values per row");
  RowScaler s;
  s.tag = tag;
  switch (tag) {
    case ScaleMethod::Auto: {
      s.center = mean_of(x);
      s.scale = sample_sd(x);
      s.flagged = (s.scale == 0.0);
      break;
    }
    case ScaleMethod::Range: {
      const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
      s.center = mean_of(x);
      s.scale = *hi - *lo;
      s.flagged = (s.scale == 0.0);
      break;
    }
    case ScaleMethod::Pareto: {
      s.center = mean_of(x);
      const double sd = sample_sd(x);
      s.scale = std::sqrt(sd);
      s.flagged = (sd == 0.0);
      break;
    }
    case ScaleMethod::Vast: {
      s.center = mean_of(x);
      s.scale = sample_sd(x);
      s.flagged = (s.scale == 0.0);
      if (!s.flagged) s.factor = s.center / s.scale;
      break;
    }
    case ScaleMethod::Level: {
      s.center = mean_of(x);
      s.scale = s.center;
      s.flagged = (s.center == 0.0);
      break;
    }
    case ScaleMethod::Weighted: {
      s.z2 = p.z_alpha * p.z_alpha;
      s.med = median(x);
      s.mad_value = mad(x, p);
      std::vector<double> w(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) w[i] = cell_weight(x[i], s.med, s.mad_value, p);
      s.wmean = weighted_mean(x, w);
      s.wsd = weighted_sd(x, w);
      s.flagged = (s.wsd == 0.0);
      break;
    }
  }
  return s;
}

double RowScaler::apply(double x) const {
  if (flagged) return 0.0;
  double out;
  if (tag == ScaleMethod::Weighted) {
    double w = 1.0;
    if (mad_value > 0.0) {
      const double dev = (x - med) / mad_value;
      const double dev2 = dev * dev;
      if (dev2 > 0.0) w = std::min(1.0, z2 / dev2);
    }
    const double t = (w == 1.0) ? x : w * x;
    out = (t - wmean) / wsd;
  } else {
    out = (x - center) / scale * factor;
  }
  return out == 0.0 ? 0.0 : out;  // normalize -0
}

std::vector<double> scale_row(ScaleMethod tag, std::span<const double> x, const RobustParams& p) {
  const RowScaler s = RowScaler::fit(tag, x, p);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s.apply(x[i]);
  return out;
}

std::vector<double> auto_scale_row(std::span<const double> x) {
  return scale_row(ScaleMethod::Auto, x, RobustParams::make());
}
std::vector<double> range_scale_row(std::span<const double> x) {
  return scale_row(ScaleMethod::Range, x, RobustParams::make());
}
std::vector<double> pareto_scale_row(std::span<const double> x) {
  return scale_row(ScaleMethod::Pareto, x, RobustParams::make());
}
std::vector<double> vast_scale_row(std::span<const double> x) {
  return scale_row(ScaleMethod::Vast, x, RobustParams::make());
}
std::vector<double> level_scale_row(std::span<const double> x) {
  return scale_row(ScaleMethod::Level, x, RobustParams::make());
}
std::vector<double> weighted_scale_row(std::span<const double> x, const RobustParams& p) {
  return scale_row(ScaleMethod::Weighted, x, p);
}

namespace {

const char* flag_reason(ScaleMethod tag) {
  switch (tag) {
    case ScaleMethod::Range:
      return "zero range";
    case ScaleMethod::Level:
      return "zero mean";
    case ScaleMethod::Weighted:
      return "zero weighted sd";
    default:
      return "zero sd";
  }
}

}  // namespace

ScaledMatrix scale(const MetaboliteMatrix& m, const ScalingMethod& method) {
  m.validate();
  ScaledMatrix out;
  out.values = Matrix(m.values.rows, m.values.cols);
  out.metabolite_ids = m.metabolite_ids;
  out.sample_ids = m.sample_ids;
  out.method = scale_method_name(method.tag);
  if (method.tag == ScaleMethod::Weighted) {
    std::ostringstream params;
    params.precision(17);
    params << "mad_constant=" << method.params.mad_constant << " alpha=" << method.params.alpha
           << " z_alpha=" << method.params.z_alpha;
    out.params = params.str();
  }
  for (std::size_t r = 0; r < m.values.rows; ++r) {
    const RowScaler s = RowScaler::fit(method.tag, m.values.row(r), method.params);
    if (s.flagged) out.flags.push_back({r, flag_reason(method.tag)});
    for (std::size_t c = 0; c < m.values.cols; ++c) {
      out.values.at(r, c) = s.apply(m.values.at(r, c));
    }
  }
  return out;
}

}  // namespace wscale
