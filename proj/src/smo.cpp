#include "wscale/smo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wscale {

namespace {

constexpr double kSnap = 1e-8;     // box-boundary snap, keeps 0 <= alpha <= C exact
constexpr double kStepEps = 1e-3;  // Platt's minimum-progress factor; smaller values
                                   // let micro-steps starve the examine-all sweeps

struct Solver {
  const Matrix& K;
  const std::vector<double>& y;
  const double C;
  const double tol;
  const std::size_t n;
  std::vector<double> alpha;
  std::vector<double> err;  // err[i] = f(x_i) - y[i], maintained incrementally
  double bias = 0.0;

  Solver(const Matrix& k, const std::vector<double>& labels, double c, double t)
      : K(k), y(labels), C(c), tol(t), n(labels.size()), alpha(n, 0.0), err(n) {
    for (std::size_t i = 0; i < n; ++i) err[i] = -y[i];  // f == 0 at alpha == 0
  }

  bool non_bound(std::size_t i) const { return alpha[i] > 0.0 && alpha[i] < C; }

  // Jointly optimizes alpha[i1], alpha[i2]; true iff the pair moved.
  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1_old = alpha[i1], a2_old = alpha[i2];
    const double y1 = y[i1], y2 = y[i2];
    const double e1 = err[i1], e2 = err[i2];
    const double s = y1 * y2;

    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2_old - a1_old);
      hi = std::min(C, C + a2_old - a1_old);
    } else {
      lo = std::max(0.0, a1_old + a2_old - C);
      hi = std::min(C, a1_old + a2_old);
    }
    if (lo >= hi) return false;

    const double k11 = K.at(i1, i1), k12 = K.at(i1, i2), k22 = K.at(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;

    double a2;
    if (eta > 0.0) {
      a2 = std::clamp(a2_old + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Flat or concave along the constraint line: the dual gain at step d is
      // y2 (e1 - e2) d - eta d^2 / 2, maximal at one of the box endpoints.
      const double slope = y2 * (e1 - e2);
      const double dlo = lo - a2_old, dhi = hi - a2_old;
      const double gain_lo = slope * dlo - 0.5 * eta * dlo * dlo;
      const double gain_hi = slope * dhi - 0.5 * eta * dhi * dhi;
      if (gain_lo > gain_hi + kSnap)
        a2 = lo;
      else if (gain_hi > gain_lo + kSnap)
        a2 = hi;
      else
        return false;
    }
    if (a2 < kSnap) a2 = 0.0;
    if (a2 > C - kSnap) a2 = C;
    if (std::abs(a2 - a2_old) < kStepEps * (a2 + a2_old + kStepEps)) return false;

    const double a1 = std::clamp(a1_old + s * (a2_old - a2), 0.0, C);
    const double d1 = y1 * (a1 - a1_old), d2 = y2 * (a2 - a2_old);

    // New bias keeps f on target for whichever index stays strictly inside
    // the box; average of both candidates when neither does.
    const double b1 = bias - (e1 + d1 * k11 + d2 * k12);
    const double b2 = bias - (e2 + d1 * k12 + d2 * k22);
    double b_new;
    if (a1 > 0.0 && a1 < C)
      b_new = b1;
    else if (a2 > 0.0 && a2 < C)
      b_new = b2;
    else
      b_new = 0.5 * (b1 + b2);

    const double db = b_new - bias;
    for (std::size_t k = 0; k < n; ++k) err[k] += d1 * K.at(i1, k) + d2 * K.at(i2, k) + db;
    alpha[i1] = a1;
    alpha[i2] = a2;
    bias = b_new;
    return true;
  }

  // Dual-objective gain of jointly optimizing (i1, i2), without applying it.
  // Near-parallel pairs score ~0 here even when |E1 - E2| is large, which is
  // what makes gain-based partner selection beat the error-gap heuristic.
  double step_gain(std::size_t i1, std::size_t i2) const {
    if (i1 == i2) return 0.0;
    const double a1_old = alpha[i1], a2_old = alpha[i2];
    const double y1 = y[i1], y2 = y[i2];

    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2_old - a1_old);
      hi = std::min(C, C + a2_old - a1_old);
    } else {
      lo = std::max(0.0, a1_old + a2_old - C);
      hi = std::min(C, a1_old + a2_old);
    }
    if (lo >= hi) return 0.0;

    const double eta = K.at(i1, i1) + K.at(i2, i2) - 2.0 * K.at(i1, i2);
    const double slope = y2 * (err[i1] - err[i2]);
    double d;
    if (eta > 0.0) {
      d = std::clamp(a2_old + slope / eta, lo, hi) - a2_old;
    } else {
      const double dlo = lo - a2_old, dhi = hi - a2_old;
      d = (slope * dlo - 0.5 * eta * dlo * dlo > slope * dhi - 0.5 * eta * dhi * dhi) ? dlo : dhi;
    }
    return slope * d - 0.5 * eta * d * d;
  }

  // KKT check on i2; on violation, steps with the max-gain partner first,
  // then falls back to ascending scans.
  bool examine(std::size_t i2) {
    const double y2 = y[i2], a2 = alpha[i2], e2 = err[i2];
    const double r2 = e2 * y2;
    if (!((r2 < -tol && a2 < C) || (r2 > tol && a2 > 0.0))) return false;

    std::size_t best = n;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double gain = step_gain(i, i2);
      if (gain > best_gain) {  // strict: ties resolve to the lowest index
        best_gain = gain;
        best = i;
      }
    }
    if (best < n && take_step(best, i2)) return true;
    for (std::size_t i = 0; i < n; ++i)
      if (non_bound(i) && take_step(i, i2)) return true;
    for (std::size_t i = 0; i < n; ++i)
      if (take_step(i, i2)) return true;
    return false;
  }
};

}  // namespace

SmoResult smo_solve(const Matrix& K, const std::vector<double>& y, double C, double tol) {
  const std::size_t n = y.size();
  if (K.rows != n || K.cols != n) throw std::invalid_argument("smo: kernel/label size mismatch");
  if (n < 2) throw std::invalid_argument("smo: need at least two points");
  if (!(C > 0.0) || !(tol > 0.0)) throw std::invalid_argument("smo: C and tol must be positive");
  for (double yi : y)
    if (yi != 1.0 && yi != -1.0) throw std::invalid_argument("smo: labels must be +/-1");

  Solver s(K, y, C, tol);
  const std::size_t max_sweeps = 10 * n;
  std::size_t sweeps = 0;
  std::size_t num_changed = 0;
  bool examine_all = true;
  while ((num_changed > 0 || examine_all) && sweeps < max_sweeps) {
    ++sweeps;
    num_changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (examine_all || s.non_bound(i))
        if (s.examine(i)) ++num_changed;
    }
    if (examine_all)
      examine_all = false;
    else if (num_changed == 0)
      examine_all = true;
  }

  SmoResult out;
  out.alpha = std::move(s.alpha);
  out.bias = s.bias;
  out.sweeps = sweeps;
  out.converged = num_changed == 0 && !examine_all;
  return out;
}

double svm_dual_objective(const Matrix& K, const std::vector<double>& y,
                          const std::vector<double>& alpha) {
  const std::size_t n = y.size();
  double linear = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    linear += alpha[i];
    for (std::size_t j = 0; j < n; ++j)
      quad += alpha[i] * alpha[j] * y[i] * y[j] * K.at(i, j);
  }
  return linear - 0.5 * quad;
}

}  // namespace wscale
