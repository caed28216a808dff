#pragma once

#include <string>
#include <vector>

#include "wscale/metrics.hpp"

namespace wscale {

struct RocCurve {
  std::string name;  // legend entry
  std::vector<RocPoint> points;
};

// Standalone SVG: unit-square axes with ticks, dashed chance diagonal, one
// polyline per curve, legend in input order. Pure function of its input,
// byte-identical across runs.
std::string render_roc_svg(const std::vector<RocCurve>& curves);

}  // namespace wscale
