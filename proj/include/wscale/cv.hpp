#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wscale/classify.hpp"
#include "wscale/matrix.hpp"
#include "wscale/metrics.hpp"
#include "wscale/scaling.hpp"

namespace wscale {

struct CvPlan {
  std::size_t folds = 5;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;
  bool stratified = true;
  // Off reproduces the scale-once-then-classify pipeline order; on refits
  // every row scaler on the training folds only (leak-free comparison mode).
  bool scaling_inside_folds = false;
};

struct IterationMetrics {
  double accuracy_pct = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  double mcc = 0.0;
};

struct MetricReport {
  // Arithmetic means over iterations.
  double accuracy_pct = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  double mcc = 0.0;
  std::vector<RocPoint> roc_points;  // vertically averaged iteration curves
  std::vector<IterationMetrics> per_iteration;

  // Configuration echo, reproduced verbatim in the JSON report.
  ClassifierSpec classifier;
  ScalingMethod scaling;
  CvPlan plan;
  double contamination_rate = 0.0;  // caller-provided annotation, 0 = clean
  std::size_t svm_nonconverged_fits = 0;
};

// Repeated stratified k-fold CV. Per iteration: fresh fold assignment from
// the seed's ("cv-iter", i) child stream, per-fold fit on the rest, pooled
// held-out confusion + ROC; the report averages iterations.
// Iterations may run in parallel (threads = 0 defers to RS_THREADS / auto);
// results are identical for every thread count.
MetricReport run_cv(const MetaboliteMatrix& m, const LabelVector& y,
                    const ScalingMethod& method, const ClassifierSpec& spec,
                    const CvPlan& plan, std::size_t threads = 0);

// JSON object with fields exactly: accuracy_pct, f1, auc, mcc, roc_points,
// config, per_iteration. Two-space indent, trailing newline.
std::string report_to_json(const MetricReport& report);

}  // namespace wscale
