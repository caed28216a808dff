#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

// NIPALS PLS1 state. W holds the unit weight vectors, T the orthonormal
// score vectors, Lx/Ly the X and y loadings, beta the regression vector
// W (Lx^T W)^-1 Ly for centered inputs.
struct PlsModel {
  std::size_t components = 0;  // fitted count; < requested q when truncated
  bool truncated = false;      // a zero-norm weight ended extraction early
  std::vector<double> beta;    // p
  Matrix W;                    // p x components
  Matrix T;                    // n x components
  Matrix Lx;                   // p x components
  std::vector<double> Ly;      // components

  double predict_centered(std::span<const double> x_centered) const;
};

// Fits q components on already-centered X (n x p, sample-major) and y.
// Callers own the centering; this routine never shifts its inputs.
// Per component h: w = eps^T u normalized, t = eps w normalized,
// Lx = eps^T t, Ly = u^T t, then deflate eps -= t Lx^T. Extraction stops
// early (truncated = true) when eps^T u or eps w has negligible norm; a
// fully uncorrelated response yields 0 components and an all-zero beta.
PlsModel fit_pls(const Matrix& X_centered, const std::vector<double>& y_centered,
                 std::size_t q);

}  // namespace wscale
