#include "wscale/cv.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wscale/errors.hpp"
#include "wscale/parallel.hpp"
#include "wscale/rng.hpp"

namespace wscale {

namespace {

std::vector<std::size_t> shuffled(RngStream& s, std::vector<std::size_t> idx) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(s.next_below(i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

bool folds_two_class(const std::vector<std::size_t>& fold, const LabelVector& y,
                     std::size_t n_folds) {
  std::vector<char> has_case(n_folds, 0), has_control(n_folds, 0);
  for (std::size_t i = 0; i < y.size(); ++i)
    (y[i] == Label::Case ? has_case : has_control)[fold[i]] = 1;
  for (std::size_t f = 0; f < n_folds; ++f)
    if (!has_case[f] || !has_control[f]) return false;
  return true;
}

// Fold id per sample. Stratified: per-class shuffle, then round-robin deal,
// so every fold holds each class's floor-or-ceil share. Non-stratified: one
// shuffled deal, redrawn while some fold is single-class (10 tries max).
std::vector<std::size_t> assign_folds(RngStream& s, const LabelVector& y, const CvPlan& plan) {
  const std::size_t n = y.size();
  std::vector<std::size_t> fold(n, 0);
  if (plan.stratified) {
    std::vector<std::size_t> cases, controls;
    for (std::size_t i = 0; i < n; ++i)
      (y[i] == Label::Case ? cases : controls).push_back(i);
    const auto sc = shuffled(s, std::move(cases));
    const auto sk = shuffled(s, std::move(controls));
    for (std::size_t t = 0; t < sc.size(); ++t) fold[sc[t]] = t % plan.folds;
    for (std::size_t t = 0; t < sk.size(); ++t) fold[sk[t]] = t % plan.folds;
    return fold;
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (int attempt = 0; attempt < 10; ++attempt) {
    const auto dealt = shuffled(s, all);
    for (std::size_t t = 0; t < n; ++t) fold[dealt[t]] = t % plan.folds;
    if (folds_two_class(fold, y, plan.folds)) return fold;
  }
  throw numeric_error("cv: no two-class fold assignment after 10 draws");
}

// Training-fold-fitted row scalers applied to both partitions (leak-free
// mode). Tables come out sample-major.
void scaled_fold_tables(const MetaboliteMatrix& m, const ScalingMethod& method,
                        const std::vector<std::size_t>& train_cols,
                        const std::vector<std::size_t>& test_cols, Matrix& train,
                        Matrix& test) {
  const std::size_t p = m.values.rows;
  train = Matrix(train_cols.size(), p);
  test = Matrix(test_cols.size(), p);
  std::vector<double> buf(train_cols.size());
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t t = 0; t < train_cols.size(); ++t) buf[t] = m.values.at(i, train_cols[t]);
    const RowScaler sc = RowScaler::fit(method.tag, buf, method.params);
    for (std::size_t t = 0; t < train_cols.size(); ++t) train.at(t, i) = sc.apply(buf[t]);
    for (std::size_t t = 0; t < test_cols.size(); ++t)
      test.at(t, i) = sc.apply(m.values.at(i, test_cols[t]));
  }
}

struct IterationOutcome {
  IterationMetrics metrics;
  std::vector<RocPoint> curve;
  std::size_t svm_bad = 0;
};

}  // namespace

MetricReport run_cv(const MetaboliteMatrix& m, const LabelVector& y,
                    const ScalingMethod& method, const ClassifierSpec& spec,
                    const CvPlan& plan, std::size_t threads) {
  m.validate();
  validate_labels(m, y);
  const std::size_t n = m.values.cols;
  if (plan.folds < 2) throw schema_error("cv: folds must be >= 2");
  if (plan.folds > n) throw schema_error("cv: more folds than samples");
  if (plan.iterations == 0) throw schema_error("cv: iterations must be >= 1");
  if (plan.stratified) {
    const std::size_t n_case = static_cast<std::size_t>(
        std::count(y.begin(), y.end(), Label::Case));
    if (n_case < plan.folds || n - n_case < plan.folds)
      throw schema_error("cv: stratified folds need at least `folds` samples per class");
  }

  // Default pipeline order: scale the whole matrix once, then cross-validate.
  Matrix table;
  if (!plan.scaling_inside_folds) table = classification_table(scale(m, method));

  const RngStream root(plan.seed);
  std::vector<IterationOutcome> slots(plan.iterations);

  parallel_for(
      plan.iterations,
      [&](std::size_t it) {
        RngStream iter_stream = root.child("cv-iter", it);
        const std::vector<std::size_t> fold = assign_folds(iter_stream, y, plan);

        ConfusionCounts pooled;
        std::vector<double> scores;
        LabelVector truths;
        scores.reserve(n);
        truths.reserve(n);
        std::size_t svm_bad = 0;

        for (std::size_t f = 0; f < plan.folds; ++f) {
          std::vector<std::size_t> train_idx, test_idx;
          for (std::size_t i = 0; i < n; ++i)
            (fold[i] == f ? test_idx : train_idx).push_back(i);

          Matrix train, test;
          if (plan.scaling_inside_folds) {
            scaled_fold_tables(m, method, train_idx, test_idx, train, test);
          } else {
            train = Matrix(train_idx.size(), table.cols);
            test = Matrix(test_idx.size(), table.cols);
            for (std::size_t t = 0; t < train_idx.size(); ++t)
              std::copy_n(table.row(train_idx[t]).data(), table.cols, train.row(t).data());
            for (std::size_t t = 0; t < test_idx.size(); ++t)
              std::copy_n(table.row(test_idx[t]).data(), table.cols, test.row(t).data());
          }

          LabelVector train_y;
          train_y.reserve(train_idx.size());
          for (std::size_t i : train_idx) train_y.push_back(y[i]);

          const TrainedClassifier model = TrainedClassifier::fit(spec, train, train_y);
          if (!model.svm_converged()) ++svm_bad;
          const double threshold = model.score_threshold();
          for (std::size_t t = 0; t < test_idx.size(); ++t) {
            const double score = model.predict_score(test.row(t));
            const Label predicted = score >= threshold ? Label::Case : Label::Control;
            pooled.add(y[test_idx[t]], predicted);
            scores.push_back(score);
            truths.push_back(y[test_idx[t]]);
          }
        }

        const ConfusionMetrics cm = confusion_metrics(pooled);
        const RocResult roc = roc_auc(scores, truths);
        slots[it] = {{cm.accuracy_pct, cm.f1, roc.auc, cm.mcc}, roc.points, svm_bad};
      },
      threads);

  MetricReport report;
  report.classifier = spec;
  report.scaling = method;
  report.plan = plan;
  report.per_iteration.reserve(plan.iterations);
  std::vector<std::vector<RocPoint>> curves;
  curves.reserve(plan.iterations);
  for (auto& slot : slots) {
    report.accuracy_pct += slot.metrics.accuracy_pct;
    report.f1 += slot.metrics.f1;
    report.auc += slot.metrics.auc;
    report.mcc += slot.metrics.mcc;
    report.svm_nonconverged_fits += slot.svm_bad;
    report.per_iteration.push_back(slot.metrics);
    curves.push_back(std::move(slot.curve));
  }
  const double k = static_cast<double>(plan.iterations);
  report.accuracy_pct /= k;
  report.f1 /= k;
  report.auc /= k;
  report.mcc /= k;
  report.roc_points = average_rocs_on_grid(curves);
  return report;
}

std::string report_to_json(const MetricReport& report) {
  nlohmann::ordered_json j;
  j["accuracy_pct"] = report.accuracy_pct;
  j["f1"] = report.f1;
  j["auc"] = report.auc;
  j["mcc"] = report.mcc;
  auto points = nlohmann::ordered_json::array();
  for (const auto& pt : report.roc_points) points.push_back({pt.fpr, pt.tpr});
  j["roc_points"] = std::move(points);

  nlohmann::ordered_json config;
  config["classifier"] = std::string(classifier_family_name(report.classifier.family));
  config["knn_k"] = report.classifier.knn_k;
  config["svm_c"] = report.classifier.svm_c;
  if (report.classifier.svm_gamma > 0.0)
    config["svm_gamma"] = report.classifier.svm_gamma;
  else
    config["svm_gamma"] = "auto";
  config["svm_tol"] = report.classifier.svm_tol;
  config["svm_kernel"] = report.classifier.svm_kernel == SvmKernel::Rbf ? "rbf" : "linear";
  config["plsda_components"] = report.classifier.plsda_components;
  config["nb_var_floor"] = report.classifier.nb_var_floor;
  config["scaling"] = scale_method_name(report.scaling.tag);
  if (report.scaling.tag == ScaleMethod::Weighted) {
    config["mad_constant"] = report.scaling.params.mad_constant;
    config["alpha"] = report.scaling.params.alpha;
    config["z_alpha"] = report.scaling.params.z_alpha;
  }
  config["contamination_rate"] = report.contamination_rate;
  config["folds"] = report.plan.folds;
  config["iterations"] = report.plan.iterations;
  config["seed"] = report.plan.seed;
  config["stratified"] = report.plan.stratified;
  config["scaling_inside_folds"] = report.plan.scaling_inside_folds;
  config["svm_nonconverged_fits"] = report.svm_nonconverged_fits;
  j["config"] = std::move(config);

  auto per_iter = nlohmann::ordered_json::array();
  for (const auto& im : report.per_iteration) {
    per_iter.push_back({{"accuracy_pct", im.accuracy_pct},
                        {"f1", im.f1},
                        {"auc", im.auc},
                        {"mcc", im.mcc}});
  }
  j["per_iteration"] = std::move(per_iter);
  return j.dump(2) + "\n";
}

}  // namespace wscale
