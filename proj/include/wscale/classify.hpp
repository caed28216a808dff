#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wscale/matrix.hpp"
#include "wscale/pls.hpp"

namespace wscale {

enum class ClassifierFamily { Knn, Nb, Svm, Plsda };

const std::vector<std::string>& classifier_family_names();
ClassifierFamily parse_classifier_family(std::string_view name);  // schema_error
std::string_view classifier_family_name(ClassifierFamily f);

enum class SvmKernel { Rbf, Linear };

struct ClassifierSpec {
  ClassifierFamily family = ClassifierFamily::Knn;
  std::size_t knn_k = 5;            // odd
  double svm_c = 1.0;
  double svm_gamma = 0.0;           // <= 0 means auto: 1 / feature count
  double svm_tol = 1e-3;
  SvmKernel svm_kernel = SvmKernel::Rbf;
  std::size_t plsda_components = 2;
  double nb_var_floor = 1e-9;
};

// Fitted state per family. All models are immutable after fit and safe to
// share across threads.
struct KnnModel {
  std::size_t k = 0;
  Matrix X;                  // stored training table, bitwise as given
  std::vector<double> y01;   // 1 = case
};

struct NbModel {
  double log_prior_case = 0.0;
  double log_prior_control = 0.0;
  std::vector<double> mean_case, mean_control;
  std::vector<double> var_case, var_control;  // floored, strictly positive
};

struct SvmModel {
  SvmKernel kernel = SvmKernel::Rbf;
  double gamma = 0.0;
  double bias = 0.0;
  bool converged = true;
  Matrix X;
  std::vector<double> coeff;  // alpha_i y_i; zeros kept so indices line up
};

struct PlsdaModel {
  std::vector<double> x_mean;
  double y_mean = 0.0;
  PlsModel pls;
};

// predict_label always equals thresholding predict_score at score_threshold:
// case-posterior-style scores (knn, nb, plsda) split at 0.5, the SVM decision
// value at 0.
class TrainedClassifier {
 public:
  // X is sample-major (rows = samples). Throws std::invalid_argument on
  // single-class y, even knn k, k > training size, or out-of-range q.
  static TrainedClassifier fit(const ClassifierSpec& spec, const Matrix& X,
                               const LabelVector& y);

  double predict_score(std::span<const double> x) const;
  Label predict_label(std::span<const double> x) const;
  double score_threshold() const;
  ClassifierFamily family() const { return family_; }
  bool svm_converged() const;  // true for non-svm families

  const KnnModel& knn() const { return std::get<KnnModel>(model_); }
  const NbModel& nb() const { return std::get<NbModel>(model_); }
  const SvmModel& svm() const { return std::get<SvmModel>(model_); }
  const PlsdaModel& plsda() const { return std::get<PlsdaModel>(model_); }

 private:
  ClassifierFamily family_ = ClassifierFamily::Knn;
  std::variant<KnnModel, NbModel, SvmModel, PlsdaModel> model_;
};

}  // namespace wscale
