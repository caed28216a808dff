#pragma once

#include <cstddef>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

// Case counts as positive throughout.
struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  void add(Label truth, Label predicted);
};

struct ConfusionMetrics {
  double accuracy_pct = 0.0;  // [0, 100]
  double f1 = 0.0;            // 0 when 2tp+fp+fn == 0
  double mcc = 0.0;           // 0 when any denominator factor is 0
};

ConfusionMetrics confusion_metrics(const ConfusionCounts& c);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;  // starts (0,0), ends (1,1), fpr ascending
  double auc = 0.0;
};

// Threshold sweep over distinct scores descending, ties grouped into one
// step; AUC by the trapezoid rule (equals the Mann-Whitney statistic with
// half-credit for score ties). Throws std::invalid_argument unless both
// classes are present.
RocResult roc_auc(const std::vector<double>& scores, const LabelVector& labels);

// Vertical averaging: each curve is read as a step function (tpr of the
// rightmost point with fpr <= grid value) and sampled on the 101-point grid
// fpr = 0.00, 0.01, ..., 1.00. A leading (0,0) is prepended when the
// averaged curve starts above zero so the endpoint invariant holds.
std::vector<RocPoint> average_rocs_on_grid(const std::vector<std::vector<RocPoint>>& curves);

}  // namespace wscale
