#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

// Negative binomial parameters, failure-count form: mean = r (1-p)/p.
struct NbParams {
  double r = 10.0;
  double p = 0.5;
};

// Case/control count matrix with a planted block of differential rows.
// Differential rows draw case cells from nb_case_de, everything else draws
// from nb_control. Deterministic per seed; row i consumes the child stream
// ("synth-row", i) so rows could be generated independently.
struct SynthConfig {
  std::size_t n_case = 106;
  std::size_t n_control = 91;
  std::size_t n_metabolites = 236;
  std::size_t n_de = 118;
  NbParams nb_control{10.0, 0.5};
  NbParams nb_case_de{30.0, 0.5};
  std::uint64_t seed = 0;

  void validate() const;  // schema_error
};

using CellIndex = std::pair<std::size_t, std::size_t>;  // (row, column)

struct GroundTruth {
  std::vector<std::string> de_metabolite_ids;
  std::vector<double> rates;                        // filled by contaminate()
  std::vector<std::vector<CellIndex>> outlier_cells;  // one set per rate
};

struct SynthResult {
  MetaboliteMatrix matrix;
  LabelVector labels;  // case columns first
  GroundTruth truth;
};

SynthResult generate(const SynthConfig& cfg);

// Replaces floor(rate * n_cells) distinct cells per rate with draws from
// N(mu, sigma^2). Cumulative mode extends each rate's cell set with fresh
// cells on top of the previous rate's set, so the sets are nested and a
// replaced cell keeps its value across rates.
struct ContaminationPlan {
  std::vector<double> rates{0.01, 0.03, 0.05, 0.07};
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  bool cumulative = true;

  void validate(const MetaboliteMatrix& m) const;  // schema_error
};

double matrix_max(const MetaboliteMatrix& m);
double default_contamination_mu(const MetaboliteMatrix& m);     // 1.5 * max
double default_contamination_sigma(const MetaboliteMatrix& m);  // all-cells sample sd

struct ContaminatedMatrix {
  double rate = 0.0;
  MetaboliteMatrix matrix;
  std::vector<CellIndex> cells;
};

struct ContaminationResult {
  std::vector<ContaminatedMatrix> by_rate;
  std::vector<std::string> warnings;  // e.g. a rate too small to replace any cell
};

ContaminationResult contaminate(const MetaboliteMatrix& m, const ContaminationPlan& plan);

}  // namespace wscale
