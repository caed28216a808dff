#pragma once

#include <string>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

struct DeConfig {
  double alpha = 0.05;
  double fc_threshold = 1.5;  // on the raw ratio scale, >= 1
  bool use_welch = true;      // off: pooled-variance t
  // Report log2(case mean / control mean) instead of the raw ratio. The DE
  // flag is always computed from the raw ratio, so flags do not move.
  bool log_fc = false;

  void validate() const;  // schema_error
};

struct DeRow {
  std::string metabolite_id;
  double t = 0.0;
  double p = 1.0;
  double fc = 1.0;       // case mean / control mean (log2 when cfg.log_fc)
  bool de_flag = false;  // p < alpha && max(fc, 1/fc) >= fc_threshold, raw fc
};

struct DeResult {
  std::vector<DeRow> rows;
  std::vector<std::string> warnings;
};

// Two-sample t (Welch by default, Welch-Satterthwaite df) + fold change per
// row. Zero control mean: fc = +inf, the flag falls to the p value alone,
// and a warning is emitted. Needs >= 2 samples per class.
DeResult de_call(const MetaboliteMatrix& m, const LabelVector& y, const DeConfig& cfg);

// metabolite_id,t,p,fc,de_flag rows under a "# alpha=..." config comment.
void write_de_csv(const std::string& path, const DeResult& result, const DeConfig& cfg);

}  // namespace wscale
