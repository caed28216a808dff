#include "wscale/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "wscale/errors.hpp"
#include "wscale/smo.hpp"

namespace wscale {

const std::vector<std::string>& classifier_family_names() {
  static const std::vector<std::string> names{"knn", "nb", "svm", "plsda"};
  return names;
}

ClassifierFamily parse_classifier_family(std::string_view name) {
  if (name == "knn") return ClassifierFamily::Knn;
  if (name == "nb") return ClassifierFamily::Nb;
  if (name == "svm") return ClassifierFamily::Svm;
  if (name == "plsda") return ClassifierFamily::Plsda;
  std::string msg = "unknown classifier '" + std::string(name) + "'; expected one of:";
  for (const auto& n : classifier_family_names()) msg += " " + n;
  throw schema_error(msg);
}

std::string_view classifier_family_name(ClassifierFamily f) {
  switch (f) {
    case ClassifierFamily::Knn: return "knn";
    case ClassifierFamily::Nb: return "nb";
    case ClassifierFamily::Svm: return "svm";
    case ClassifierFamily::Plsda: return "plsda";
  }
  return "?";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double kernel_value(SvmKernel kernel, double gamma, std::span<const double> a,
                    std::span<const double> b) {
  if (kernel == SvmKernel::Linear) return dot(a, b);
  return std::exp(-gamma * sq_dist(a, b));
}

KnnModel fit_knn(const ClassifierSpec& spec, const Matrix& X, const LabelVector& y) {
  if (spec.knn_k == 0 || spec.knn_k % 2 == 0)
    throw std::invalid_argument("knn: k must be a positive odd count");
  if (spec.knn_k > X.rows)
    throw std::invalid_argument("knn: k exceeds the training-set size");
  KnnModel m;
  m.k = spec.knn_k;
  m.X = X;
  m.y01.reserve(y.size());
  for (Label l : y) m.y01.push_back(l == Label::Case ? 1.0 : 0.0);
  return m;
}

NbModel fit_nb(const ClassifierSpec& spec, const Matrix& X, const LabelVector& y) {
  if (!(spec.nb_var_floor > 0.0))
    throw std::invalid_argument("nb: variance floor must be positive");
  const std::size_t n = X.rows, p = X.cols;
  NbModel m;
  m.mean_case.assign(p, 0.0);
  m.mean_control.assign(p, 0.0);
  m.var_case.assign(p, 0.0);
  m.var_control.assign(p, 0.0);

  std::size_t n_case = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& mean = y[i] == Label::Case ? m.mean_case : m.mean_control;
    if (y[i] == Label::Case) ++n_case;
    for (std::size_t j = 0; j < p; ++j) mean[j] += X.at(i, j);
  }
  const std::size_t n_control = n - n_case;
  for (std::size_t j = 0; j < p; ++j) {
    m.mean_case[j] /= static_cast<double>(n_case);
    m.mean_control[j] /= static_cast<double>(n_control);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool is_case = y[i] == Label::Case;
    auto& mean = is_case ? m.mean_case : m.mean_control;
    auto& var = is_case ? m.var_case : m.var_control;
    for (std::size_t j = 0; j < p; ++j) {
      const double d = X.at(i, j) - mean[j];
      var[j] += d * d;
    }
  }
  // Sample variance when a class has >= 2 members, else 0; the floor keeps
  // every density proper either way.
  for (std::size_t j = 0; j < p; ++j) {
    m.var_case[j] =
        std::max(n_case >= 2 ? m.var_case[j] / static_cast<double>(n_case - 1) : 0.0,
                 spec.nb_var_floor);
    m.var_control[j] =
        std::max(n_control >= 2 ? m.var_control[j] / static_cast<double>(n_control - 1) : 0.0,
                 spec.nb_var_floor);
  }
  m.log_prior_case = std::log(static_cast<double>(n_case) / static_cast<double>(n));
  m.log_prior_control = std::log(static_cast<double>(n_control) / static_cast<double>(n));
  return m;
}

SvmModel fit_svm(const ClassifierSpec& spec, const Matrix& X, const LabelVector& y) {
  if (!(spec.svm_c > 0.0)) throw std::invalid_argument("svm: C must be positive");
  if (!(spec.svm_tol > 0.0)) throw std::invalid_argument("svm: tol must be positive");
  const std::size_t n = X.rows;
  SvmModel m;
  m.kernel = spec.svm_kernel;
  m.gamma = spec.svm_gamma > 0.0 ? spec.svm_gamma : 1.0 / static_cast<double>(X.cols);
  m.X = X;

  std::vector<double> ypm(n);
  for (std::size_t i = 0; i < n; ++i) ypm[i] = y[i] == Label::Case ? 1.0 : -1.0;

  Matrix K(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    K.at(i, i) = kernel_value(m.kernel, m.gamma, X.row(i), X.row(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = kernel_value(m.kernel, m.gamma, X.row(i), X.row(j));
      K.at(i, j) = v;
      K.at(j, i) = v;
    }
  }

  const SmoResult sol = smo_solve(K, ypm, spec.svm_c, spec.svm_tol);
  m.bias = sol.bias;
  m.converged = sol.converged;
  m.coeff.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.coeff[i] = sol.alpha[i] * ypm[i];
  return m;
}

PlsdaModel fit_plsda(const ClassifierSpec& spec, const Matrix& X, const LabelVector& y) {
  const std::size_t n = X.rows, p = X.cols;
  const std::size_t q = spec.plsda_components;
  if (q == 0 || q > std::min(n - 1, p))
    throw std::invalid_argument("plsda: components must lie in [1, min(samples-1, features)]");

  PlsdaModel m;
  m.x_mean.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) m.x_mean[j] += X.at(i, j);
  for (double& v : m.x_mean) v /= static_cast<double>(n);

  std::vector<double> yc(n);
  for (std::size_t i = 0; i < n; ++i) yc[i] = y[i] == Label::Case ? 1.0 : 0.0;
  m.y_mean = std::accumulate(yc.begin(), yc.end(), 0.0) / static_cast<double>(n);
  for (double& v : yc) v -= m.y_mean;

  Matrix Xc = X;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) Xc.at(i, j) -= m.x_mean[j];

  m.pls = fit_pls(Xc, yc, q);
  return m;
}

double score_knn(const KnnModel& m, std::span<const double> x) {
  const std::size_t n = m.X.rows;
  // (squared distance, training index); lexicographic sort makes distance
  // ties resolve to the lower index.
  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = {sq_dist(x, m.X.row(i)), i};
  std::sort(order.begin(), order.end());
  double cases = 0.0;
  for (std::size_t t = 0; t < m.k; ++t) cases += m.y01[order[t].second];
  return cases / static_cast<double>(m.k);
}

double score_nb(const NbModel& m, std::span<const double> x) {
  double lc = m.log_prior_case, lk = m.log_prior_control;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double dc = x[j] - m.mean_case[j];
    const double dk = x[j] - m.mean_control[j];
    constexpr double two_pi = 2.0 * std::numbers::pi;
    lc -= 0.5 * (std::log(two_pi * m.var_case[j]) + dc * dc / m.var_case[j]);
    lk -= 0.5 * (std::log(two_pi * m.var_control[j]) + dk * dk / m.var_control[j]);
  }
  const double top = std::max(lc, lk);
  const double ec = std::exp(lc - top), ek = std::exp(lk - top);
  return ec / (ec + ek);
}

double score_svm(const SvmModel& m, std::span<const double> x) {
  double f = m.bias;
  for (std::size_t i = 0; i < m.X.rows; ++i) {
    if (m.coeff[i] == 0.0) continue;
    f += m.coeff[i] * kernel_value(m.kernel, m.gamma, x, m.X.row(i));
  }
  return f;
}

double score_plsda(const PlsdaModel& m, std::span<const double> x) {
  std::vector<double> xc(x.begin(), x.end());
  for (std::size_t j = 0; j < xc.size(); ++j) xc[j] -= m.x_mean[j];
  return m.y_mean + m.pls.predict_centered(xc);
}

}  // namespace

TrainedClassifier TrainedClassifier::fit(const ClassifierSpec& spec, const Matrix& X,
                                         const LabelVector& y) {
  if (X.rows != y.size()) throw std::invalid_argument("fit: sample/label count mismatch");
  if (X.rows < 2 || X.cols == 0) throw std::invalid_argument("fit: need >= 2 samples");
  const bool has_case = std::find(y.begin(), y.end(), Label::Case) != y.end();
  const bool has_control = std::find(y.begin(), y.end(), Label::Control) != y.end();
  if (!has_case || !has_control)
    throw std::invalid_argument("fit: training labels contain a single class");

  TrainedClassifier out;
  out.family_ = spec.family;
  switch (spec.family) {
    case ClassifierFamily::Knn: out.model_ = fit_knn(spec, X, y); break;
    case ClassifierFamily::Nb: out.model_ = fit_nb(spec, X, y); break;
    case ClassifierFamily::Svm: out.model_ = fit_svm(spec, X, y); break;
    case ClassifierFamily::Plsda: out.model_ = fit_plsda(spec, X, y); break;
  }
  return out;
}

double TrainedClassifier::predict_score(std::span<const double> x) const {
  const std::size_t p = std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KnnModel> || std::is_same_v<T, SvmModel>)
          return m.X.cols;
        else if constexpr (std::is_same_v<T, NbModel>)
          return m.mean_case.size();
        else
          return m.x_mean.size();
      },
      model_);
  if (x.size() != p) throw std::invalid_argument("predict: feature dimension mismatch");

  switch (family_) {
    case ClassifierFamily::Knn: return score_knn(std::get<KnnModel>(model_), x);
    case ClassifierFamily::Nb: return score_nb(std::get<NbModel>(model_), x);
    case ClassifierFamily::Svm: return score_svm(std::get<SvmModel>(model_), x);
    case ClassifierFamily::Plsda: return score_plsda(std::get<PlsdaModel>(model_), x);
  }
  throw std::logic_error("predict: unreachable");
}

Label TrainedClassifier::predict_label(std::span<const double> x) const {
  return predict_score(x) >= score_threshold() ? Label::Case : Label::Control;
}

double TrainedClassifier::score_threshold() const {
  return family_ == ClassifierFamily::Svm ? 0.0 : 0.5;
}

bool TrainedClassifier::svm_converged() const {
  if (family_ != ClassifierFamily::Svm) return true;
  return std::get<SvmModel>(model_).converged;
}

}  // namespace wscale
