#include "wscale/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wscale {

void ConfusionCounts::add(Label truth, Label predicted) {
  if (truth == Label::Case)
    predicted == Label::Case ? ++tp : ++fn;
  else
    predicted == Label::Case ? ++fp : ++tn;
}

ConfusionMetrics confusion_metrics(const ConfusionCounts& c) {
  if (c.total() == 0) throw std::invalid_argument("confusion metrics: no samples");
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn), fn = static_cast<double>(c.fn);

  ConfusionMetrics m;
  m.accuracy_pct = 100.0 * (tp + tn) / static_cast<double>(c.total());
  const double f1_den = 2.0 * tp + fp + fn;
  m.f1 = f1_den > 0.0 ? 2.0 * tp / f1_den : 0.0;
  const double prod = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  m.mcc = prod > 0.0 ? (tp * tn - fp * fn) / std::sqrt(prod) : 0.0;
  return m;
}

RocResult roc_auc(const std::vector<double>& scores, const LabelVector& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("roc: score/label count mismatch");
  std::size_t n_case = 0;
  for (Label l : labels) n_case += l == Label::Case;
  const std::size_t n_control = labels.size() - n_case;
  if (n_case == 0 || n_control == 0)
    throw std::invalid_argument("roc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocResult out;
  out.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      if (labels[order[i]] == Label::Case)
        ++tp;
      else
        ++fp;
    }
    out.points.push_back({static_cast<double>(fp) / static_cast<double>(n_control),
                          static_cast<double>(tp) / static_cast<double>(n_case)});
  }

  for (std::size_t k = 1; k < out.points.size(); ++k) {
    const auto& a = out.points[k - 1];
    const auto& b = out.points[k];
    out.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return out;
}

std::vector<RocPoint> average_rocs_on_grid(const std::vector<std::vector<RocPoint>>& curves) {
  if (curves.empty()) throw std::invalid_argument("roc average: no curves");

  std::vector<RocPoint> avg;
  avg.reserve(102);
  for (int g = 0; g <= 100; ++g) {
    const double f = static_cast<double>(g) / 100.0;
    double sum = 0.0;
    for (const auto& curve : curves) {
      double tpr = 0.0;
      for (const auto& pt : curve) {
        if (pt.fpr > f) break;
        tpr = pt.tpr;  // rightmost point at or below f; tpr ascends with it
      }
      sum += tpr;
    }
    avg.push_back({f, sum / static_cast<double>(curves.size())});
  }
  if (avg.front().tpr > 0.0) avg.insert(avg.begin(), {0.0, 0.0});
  return avg;
}

}  // namespace wscale
