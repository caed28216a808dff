#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wscale/classify.hpp"
#include "wscale/errors.hpp"
#include "wscale/rng.hpp"

using namespace wscale;

namespace {

Matrix table(std::size_t n, std::size_t p, const std::function<double(std::size_t, std::size_t)>& fn) {
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) X.at(i, j) = fn(i, j);
  }
  return X;
}

}  // namespace

TEST_CASE("family names parse both ways") {
  CHECK(parse_classifier_family("knn") == ClassifierFamily::Knn);
  CHECK(parse_classifier_family("plsda") == ClassifierFamily::Plsda);
  CHECK(classifier_family_name(ClassifierFamily::Svm) == "svm");
  CHECK(classifier_family_names().size() == 4);
  CHECK_THROWS_WITH_AS(parse_classifier_family("forest"), doctest::Contains("plsda"),
                       schema_error);
}

TEST_CASE("knn stores the training table bitwise and scores vote fractions") {
  RngStream rng(1);
  Matrix X = table(10, 3, [&](std::size_t, std::size_t) { return rng.next_unit(); });
  LabelVector y(10, Label::Control);
  for (std::size_t i = 0; i < 5; ++i) y[i] = Label::Case;

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Knn;
  spec.knn_k = 1;
  auto model = TrainedClassifier::fit(spec, X, y);
  CHECK(model.knn().X == X);

  // Query equal to a training case point: the self-neighbor wins.
  CHECK(model.predict_score(X.row(2)) == 1.0);
  CHECK(model.predict_label(X.row(2)) == Label::Case);
  CHECK(model.predict_score(X.row(7)) == 0.0);
}

TEST_CASE("knn k=3 hand toy votes control") {
  Matrix X(3, 2);
  X.v = {0, 0, 0, 1, 5, 5};
  LabelVector y = {Label::Control, Label::Control, Label::Case};
  ClassifierSpec spec;
  spec.family = ClassifierFamily::Knn;
  spec.knn_k = 3;
  auto model = TrainedClassifier::fit(spec, X, y);

  std::vector<double> q = {0, 0.5};
  CHECK(model.predict_label(q) == Label::Control);
  CHECK(model.predict_score(q) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("knn matches the exhaustive oracle on random instances") {
  RngStream rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 6 + rng.next_below(45);
    const std::size_t p = 1 + rng.next_below(10);
    const std::size_t k = 1 + 2 * rng.next_below(3);  // 1, 3, 5

    Matrix X = table(n, p, [&](std::size_t, std::size_t) {
      // Coarse grid so distance ties actually occur.
      return double(rng.next_below(4));
    });
    LabelVector y(n);
    bool both = false;
    while (!both) {
      std::size_t cases = 0;
      for (auto& l : y) {
        l = rng.next_unit() < 0.5 ? Label::Case : Label::Control;
        cases += (l == Label::Case);
      }
      both = cases > 0 && cases < n;
    }

    ClassifierSpec spec;
    spec.family = ClassifierFamily::Knn;
    spec.knn_k = k;
    auto model = TrainedClassifier::fit(spec, X, y);

    std::vector<double> q(p);
    for (auto& v : q) v = double(rng.next_below(4));

    std::vector<std::vector<double>> xs(n, std::vector<double>(p));
    std::vector<int> y01(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) xs[i][j] = X.at(i, j);
      y01[i] = (y[i] == Label::Case);
    }
    const auto [frac, label] = oracle::knn_label(xs, y01, q, k);
    CHECK(model.predict_score(q) == doctest::Approx(frac).epsilon(1e-12));
    CHECK((model.predict_label(q) == Label::Case) == (label == 1));
  }
}

TEST_CASE("nb fits means, floors variances, and scores posteriors") {
  // One feature, class control {0,0}, class case {10,10}.
  Matrix X(4, 1);
  X.v = {0, 0, 10, 10};
  LabelVector y = {Label::Control, Label::Control, Label::Case, Label::Case};
  ClassifierSpec spec;
  spec.family = ClassifierFamily::Nb;
  auto model = TrainedClassifier::fit(spec, X, y);

  CHECK(model.nb().mean_control[0] == 0.0);
  CHECK(model.nb().mean_case[0] == 10.0);
  CHECK(model.nb().var_control[0] == spec.nb_var_floor);
  CHECK(model.nb().var_case[0] == spec.nb_var_floor);
  CHECK(model.nb().log_prior_case == doctest::Approx(std::log(0.5)));

  // Equal priors and variances: the midpoint is exactly ambivalent.
  std::vector<double> mid = {5.0};
  CHECK(model.predict_score(mid) == doctest::Approx(0.5).epsilon(1e-9));

  // 10-sigma separation: certainty at the class centers.
  std::vector<double> zero = {0.0}, ten = {10.0};
  CHECK(model.predict_score(zero) < 1e-3);
  CHECK(model.predict_score(ten) > 0.999);
  CHECK(model.predict_label(zero) == Label::Control);
  CHECK(model.predict_label(ten) == Label::Case);
}

TEST_CASE("nb posteriors complement and resist likelihood scaling") {
  RngStream rng(23);
  const std::size_t n = 24, p = 4;
  Matrix X = table(n, p, [&](std::size_t i, std::size_t) {
    return rng.next_unit() + (i < n / 2 ? 0.0 : 1.0);
  });
  LabelVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = i < n / 2 ? Label::Control : Label::Case;

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Nb;
  auto model = TrainedClassifier::fit(spec, X, y);

  // Swapping the class labels flips the posterior to its complement: the
  // two posteriors sum to 1.
  LabelVector flipped(n);
  for (std::size_t i = 0; i < n; ++i) {
    flipped[i] = y[i] == Label::Case ? Label::Control : Label::Case;
  }
  auto mirror = TrainedClassifier::fit(spec, X, flipped);

  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> q(p);
    for (auto& v : q) v = rng.next_unit() * 2;
    const double s = model.predict_score(q);
    CHECK(s > 0.0);
    CHECK(s < 1.0);
    CHECK(std::abs(s + mirror.predict_score(q) - 1.0) < 1e-12);
  }

  // Adding a constant feature multiplies both likelihoods by the same
  // density value; the posterior must not move.
  Matrix Xc(n, p + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) Xc.at(i, j) = X.at(i, j);
    Xc.at(i, p) = 3.25;
  }
  // The constant feature gets the variance floor; evaluate queries at the
  // constant's value so its likelihood is identical for both classes.
  auto wide = TrainedClassifier::fit(spec, Xc, y);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<double> q(p), qc(p + 1);
    for (std::size_t j = 0; j < p; ++j) qc[j] = q[j] = rng.next_unit() * 2;
    qc[p] = 3.25;
    CHECK(std::abs(model.predict_score(q) - wide.predict_score(qc)) < 1e-9);
  }
}

TEST_CASE("svm separates the analytic two-point toy") {
  Matrix X(2, 2);
  X.v = {-1, 0, 1, 0};
  LabelVector y = {Label::Control, Label::Case};

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Svm;
  spec.svm_kernel = SvmKernel::Linear;
  spec.svm_c = 1e6;
  auto model = TrainedClassifier::fit(spec, X, y);
  CHECK(model.svm_converged());

  // Max margin solution is w=(1,0), b=0: alphas are 0.5 each.
  CHECK(model.svm().coeff[0] == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(model.svm().coeff[1] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(model.svm().bias) < 1e-6);

  std::vector<double> right = {0.5, 0.0}, left = {-0.5, 0.0};
  CHECK(model.predict_score(right) > 0.0);
  CHECK(model.predict_label(right) == Label::Case);
  CHECK(model.predict_label(left) == Label::Control);

  // Training accuracy 100%.
  CHECK(model.predict_label(X.row(0)) == Label::Control);
  CHECK(model.predict_label(X.row(1)) == Label::Case);
}

TEST_CASE("svm rbf defaults fit a noisy blob pair") {
  RngStream rng(31);
  const std::size_t n = 40;
  Matrix X = table(n, 2, [&](std::size_t i, std::size_t) {
    return rng.next_unit() + (i < n / 2 ? 0.0 : 3.0);
  });
  LabelVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = i < n / 2 ? Label::Control : Label::Case;

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Svm;  // gamma auto = 1/p = 0.5
  auto model = TrainedClassifier::fit(spec, X, y);
  CHECK(model.svm().gamma == 0.5);
  CHECK(model.svm_converged());

  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) correct += (model.predict_label(X.row(i)) == y[i]);
  CHECK(correct == n);

  // Dual feasibility is exact.
  double sum_ay = 0.0;
  for (double c : model.svm().coeff) {
    sum_ay += c;
    CHECK(std::abs(c) <= spec.svm_c + 1e-15);
  }
  CHECK(std::abs(sum_ay) <= 1e-8);
}

TEST_CASE("plsda single-feature scores increase with x") {
  Matrix X(4, 1);
  X.v = {1, 2, 3, 4};
  LabelVector y = {Label::Control, Label::Control, Label::Case, Label::Case};

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Plsda;
  spec.plsda_components = 1;
  auto model = TrainedClassifier::fit(spec, X, y);

  double prev = -1e300;
  for (double x = 0.0; x <= 5.0; x += 0.5) {
    std::vector<double> q = {x};
    const double s = model.predict_score(q);
    CHECK(s > prev);
    prev = s;
  }
  // The fitted line passes through (mean x, mean y): score(2.5) = 0.5.
  std::vector<double> mid = {2.5};
  CHECK(model.predict_score(mid) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(model.predict_label(std::vector<double>{4.0}) == Label::Case);
  CHECK(model.predict_label(std::vector<double>{1.0}) == Label::Control);
}

TEST_CASE("plsda predictions are rotation invariant") {
  RngStream rng(41);
  const std::size_t n = 16, p = 2;
  Matrix X = table(n, p, [&](std::size_t, std::size_t) { return rng.next_unit() * 4; });
  LabelVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = X.at(i, 0) + X.at(i, 1) > 4 ? Label::Case : Label::Control;
  }

  const double theta = 0.7;
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix Xr(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    Xr.at(i, 0) = c * X.at(i, 0) - s * X.at(i, 1);
    Xr.at(i, 1) = s * X.at(i, 0) + c * X.at(i, 1);
  }

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Plsda;
  auto a = TrainedClassifier::fit(spec, X, y);
  auto b = TrainedClassifier::fit(spec, Xr, y);

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> q = {rng.next_unit() * 4, rng.next_unit() * 4};
    std::vector<double> qr = {c * q[0] - s * q[1], s * q[0] + c * q[1]};
    CHECK(std::abs(a.predict_score(q) - b.predict_score(qr)) < 1e-8);
  }
}

TEST_CASE("labels always equal thresholded scores across families") {
  RngStream rng(53);
  const std::size_t n = 30, p = 5;
  Matrix X = table(n, p, [&](std::size_t i, std::size_t) {
    return rng.next_unit() * 2 + (i % 2 ? 0.8 : 0.0);
  });
  LabelVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = i % 2 ? Label::Case : Label::Control;

  for (auto family : {ClassifierFamily::Knn, ClassifierFamily::Nb, ClassifierFamily::Svm,
                      ClassifierFamily::Plsda}) {
    ClassifierSpec spec;
    spec.family = family;
    auto model = TrainedClassifier::fit(spec, X, y);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> q(p);
      for (auto& v : q) v = rng.next_unit() * 3 - 0.5;
      const bool as_case = model.predict_score(q) >= model.score_threshold();
      CHECK((model.predict_label(q) == Label::Case) == as_case);
    }
  }
}

TEST_CASE("fit rejects invalid configurations") {
  Matrix X(4, 2);
  X.v = {0, 0, 1, 1, 2, 2, 3, 3};
  LabelVector y = {Label::Control, Label::Control, Label::Case, Label::Case};

  ClassifierSpec spec;
  spec.family = ClassifierFamily::Knn;
  spec.knn_k = 3;  // the default 5 exceeds this toy's 4 samples

  SUBCASE("single-class labels") {
    LabelVector mono(4, Label::Case);
    CHECK_THROWS_WITH_AS(TrainedClassifier::fit(spec, X, mono),
                         doctest::Contains("single class"), std::invalid_argument);
  }
  SUBCASE("even k") {
    spec.knn_k = 4;
    CHECK_THROWS_AS(TrainedClassifier::fit(spec, X, y), std::invalid_argument);
  }
  SUBCASE("k larger than training size") {
    spec.knn_k = 5;
    CHECK_THROWS_AS(TrainedClassifier::fit(spec, X, y), std::invalid_argument);
  }
  SUBCASE("plsda q out of range") {
    spec.family = ClassifierFamily::Plsda;
    spec.plsda_components = 4;  // min(n-1, p) = 2
    CHECK_THROWS_AS(TrainedClassifier::fit(spec, X, y), std::invalid_argument);
  }
  SUBCASE("label/row count mismatch") {
    LabelVector three = {Label::Control, Label::Case, Label::Case};
    CHECK_THROWS_AS(TrainedClassifier::fit(spec, X, three), std::invalid_argument);
  }
  SUBCASE("query dimension mismatch") {
    auto model = TrainedClassifier::fit(spec, X, y);
    std::vector<double> q = {1, 2, 3};
    CHECK_THROWS_AS(model.predict_score(q), std::invalid_argument);
  }
}

TEST_CASE("fits are deterministic") {
  RngStream rng(71);
  const std::size_t n = 26, p = 3;
  Matrix X = table(n, p, [&](std::size_t, std::size_t) { return rng.next_unit() * 5; });
  LabelVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = i % 2 ? Label::Case : Label::Control;

  for (auto family : {ClassifierFamily::Knn, ClassifierFamily::Nb, ClassifierFamily::Svm,
                      ClassifierFamily::Plsda}) {
    ClassifierSpec spec;
    spec.family = family;
    auto a = TrainedClassifier::fit(spec, X, y);
    auto b = TrainedClassifier::fit(spec, X, y);
    std::vector<double> q(p, 2.5);
    CHECK(a.predict_score(q) == b.predict_score(q));
  }
}
