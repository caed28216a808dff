#include "wscale/pls.hpp"

#include <cmath>
#include <stdexcept>

#include "wscale/errors.hpp"

namespace wscale {

namespace {

constexpr double kTinyNorm = 1e-12;  // below this, a direction carries no signal

double norm2(const std::vector<double>& v) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  return std::sqrt(ss);
}

// Solves A z = rhs for small q x q systems by Gaussian elimination with
// partial pivoting. A and rhs are clobbered.
std::vector<double> solve_small(Matrix A, std::vector<double> rhs) {
  const std::size_t q = rhs.size();
  for (std::size_t col = 0; col < q; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < q; ++r)
      if (std::abs(A.at(r, col)) > std::abs(A.at(pivot, col))) pivot = r;
    if (std::abs(A.at(pivot, col)) < 1e-14)
      throw numeric_error("pls: singular loading system in beta solve");
    if (pivot != col) {
      for (std::size_t c = 0; c < q; ++c) std::swap(A.at(pivot, c), A.at(col, c));
      std::swap(rhs[pivot], rhs[col]);
    }
    for (std::size_t r = col + 1; r < q; ++r) {
      const double f = A.at(r, col) / A.at(col, col);
      for (std::size_t c = col; c < q; ++c) A.at(r, c) -= f * A.at(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> z(q);
  for (std::size_t r = q; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t c = r + 1; c < q; ++c) acc -= A.at(r, c) * z[c];
    z[r] = acc / A.at(r, r);
  }
  return z;
}

}  // namespace

double PlsModel::predict_centered(std::span<const double> x_centered) const {
  if (x_centered.size() != beta.size())
    throw std::invalid_argument("pls: feature dimension mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) acc += x_centered[j] * beta[j];
  return acc;
}

PlsModel fit_pls(const Matrix& X_centered, const std::vector<double>& y_centered,
                 std::size_t q) {
  const std::size_t n = X_centered.rows, p = X_centered.cols;
  if (y_centered.size() != n) throw std::invalid_argument("pls: X/y length mismatch");
  if (q == 0) throw std::invalid_argument("pls: need at least one component");

  Matrix eps = X_centered;  // deflated in place; u stays the original response
  std::vector<std::vector<double>> ws, ts, lxs;
  std::vector<double> lys;

  for (std::size_t h = 0; h < q; ++h) {
    std::vector<double> w(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) w[j] += eps.at(i, j) * y_centered[i];
    const double wn = norm2(w);
    if (wn < kTinyNorm) break;  // residual X carries no covariance with y
    for (double& x : w) x /= wn;

    std::vector<double> t(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) t[i] += eps.at(i, j) * w[j];
    const double tn = norm2(t);
    if (tn < kTinyNorm) break;
    for (double& x : t) x /= tn;

    std::vector<double> lx(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) lx[j] += eps.at(i, j) * t[i];
    double ly = 0.0;
    for (std::size_t i = 0; i < n; ++i) ly += y_centered[i] * t[i];

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) eps.at(i, j) -= t[i] * lx[j];

    ws.push_back(std::move(w));
    ts.push_back(std::move(t));
    lxs.push_back(std::move(lx));
    lys.push_back(ly);
  }

  PlsModel out;
  out.components = ws.size();
  out.truncated = out.components < q;
  out.beta.assign(p, 0.0);

  // Zero components (response uncorrelated with every feature): beta stays
  // zero and predictions collapse to the centered mean.
  const std::size_t m = out.components;
  if (m == 0) {
    out.W = Matrix(p, 0);
    out.T = Matrix(n, 0);
    out.Lx = Matrix(p, 0);
    return out;
  }
  out.W = Matrix(p, m);
  out.T = Matrix(n, m);
  out.Lx = Matrix(p, m);
  out.Ly = lys;
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t j = 0; j < p; ++j) {
      out.W.at(j, h) = ws[h][j];
      out.Lx.at(j, h) = lxs[h][j];
    }
    for (std::size_t i = 0; i < n; ++i) out.T.at(i, h) = ts[h][i];
  }

  // beta = W (Lx^T W)^-1 Ly via an m x m solve, never an explicit inverse.
  Matrix lxw(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < p; ++j) acc += out.Lx.at(j, r) * out.W.at(j, c);
      lxw.at(r, c) = acc;
    }
  const std::vector<double> z = solve_small(std::move(lxw), lys);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t h = 0; h < m; ++h) out.beta[j] += out.W.at(j, h) * z[h];
  return out;
}

}  // namespace wscale
