#pragma once

#include <cstddef>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

struct SmoResult {
  std::vector<double> alpha;
  double bias = 0.0;
  bool converged = false;   // false when the sweep cap cut optimization short
  std::size_t sweeps = 0;
};

// Maximizes the SVM dual  sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij  subject
// to 0 <= a_i <= C and sum a_i y_i = 0, by sequential minimal optimization.
// Decision value convention: f(x_i) = sum_j a_j y_j K_ij + bias.
//
// Working-set order is fixed: sweeps examine indices ascending, and the
// partner is the feasible pair of maximal dual gain with lowest-index
// tie-break, so results are bit-reproducible. Gives up (converged = false)
// after 10 * n sweeps.
SmoResult smo_solve(const Matrix& K, const std::vector<double>& y, double C, double tol);

double svm_dual_objective(const Matrix& K, const std::vector<double>& y,
                          const std::vector<double>& alpha);

}  // namespace wscale
