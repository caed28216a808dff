#include "wscale/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <utility>

#include "wscale/dists.hpp"
#include "wscale/errors.hpp"
#include "wscale/rng.hpp"

namespace wscale {

namespace {

void check_nb(const NbParams& nb, const char* which) {
  if (!(nb.r > 0.0) || !std::isfinite(nb.r))
    throw schema_error(std::string(which) + ": r must be a positive real");
  if (!(nb.p > 0.0) || !(nb.p < 1.0))
    throw schema_error(std::string(which) + ": p must lie in (0, 1)");
}

// "M007", "S042": zero-padded to the width of the largest index.
std::string padded_id(char prefix, std::size_t index, std::size_t count) {
  int width = 1;
  for (std::size_t c = count; c >= 10; c /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width > 20 ? 20 : width, index + 1);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_case == 0 || n_control == 0)
    throw schema_error("synth config: need at least one case and one control sample");
  if (n_metabolites == 0) throw schema_error("synth config: n_metabolites must be positive");
  if (n_de > n_metabolites)
    throw schema_error("synth config: n_de exceeds n_metabolites");
  check_nb(nb_control, "nb_control");
  check_nb(nb_case_de, "nb_case_de");
}

SynthResult generate(const SynthConfig& cfg) {
  cfg.validate();
  const std::size_t n_samples = cfg.n_case + cfg.n_control;

  SynthResult out;
  out.matrix.values = Matrix(cfg.n_metabolites, n_samples);
  out.matrix.metabolite_ids.reserve(cfg.n_metabolites);
  for (std::size_t i = 0; i < cfg.n_metabolites; ++i)
    out.matrix.metabolite_ids.push_back(padded_id('M', i, cfg.n_metabolites));
  out.matrix.sample_ids.reserve(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j)
    out.matrix.sample_ids.push_back(padded_id('S', j, n_samples));

  out.labels.assign(n_samples, Label::Control);
  std::fill_n(out.labels.begin(), cfg.n_case, Label::Case);

  // The first n_de rows carry the planted signal: case columns (the first
  // n_case) draw from nb_case_de, everything else from nb_control.
  RngStream root(cfg.seed);
  for (std::size_t i = 0; i < cfg.n_metabolites; ++i) {
    RngStream row = root.child("synth-row", i);
    const bool de = i < cfg.n_de;
    for (std::size_t j = 0; j < n_samples; ++j) {
      const NbParams& nb = (de && j < cfg.n_case) ? cfg.nb_case_de : cfg.nb_control;
      out.matrix.values.at(i, j) = sample_negative_binomial(row, nb.r, nb.p);
    }
  }

  out.truth.de_metabolite_ids.assign(out.matrix.metabolite_ids.begin(),
                                     out.matrix.metabolite_ids.begin() +
                                         static_cast<std::ptrdiff_t>(cfg.n_de));
  out.matrix.validate();
  return out;
}

double matrix_max(const MetaboliteMatrix& m) {
  if (m.values.v.empty()) throw schema_error("matrix max: empty matrix");
  return *std::max_element(m.values.v.begin(), m.values.v.end());
}

double default_contamination_mu(const MetaboliteMatrix& m) { return 1.5 * matrix_max(m); }

double default_contamination_sigma(const MetaboliteMatrix& m) {
  const auto& v = m.values.v;
  if (v.size() < 2) throw schema_error("contamination sigma: need at least two cells");
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void ContaminationPlan::validate(const MetaboliteMatrix& m) const {
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(rates[k] > 0.0) || !(rates[k] < 1.0))
      throw schema_error("contamination: each rate must lie in (0, 1)");
    if (k > 0 && !(rates[k] > rates[k - 1]))
      throw schema_error("contamination: rates must be strictly increasing");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw schema_error("contamination: sigma must be a positive real");
  if (!(mu > matrix_max(m)))
    throw schema_error("contamination: mu must exceed the matrix maximum");
}

namespace {

// First n_take entries of a uniform random permutation of 0..n_cells-1
// (partial Fisher-Yates; only the consumed prefix is materialized fairly).
std::vector<std::size_t> sample_cells(RngStream& stream, std::size_t n_cells,
                                      std::size_t n_take) {
  std::vector<std::size_t> idx(n_cells);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t t = 0; t < n_take; ++t) {
    const std::size_t j = t + static_cast<std::size_t>(
                                  stream.next_below(static_cast<std::uint64_t>(n_cells - t)));
    std::swap(idx[t], idx[j]);
  }
  idx.resize(n_take);
  return idx;
}

std::string zero_cell_warning(double rate) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "rate %g selects fewer than one cell; nothing replaced", rate);
  return buf;
}

}  // namespace

ContaminationResult contaminate(const MetaboliteMatrix& m, const ContaminationPlan& plan) {
  plan.validate(m);
  const std::size_t n_cells = m.values.v.size();
  const std::size_t cols = m.values.cols;

  ContaminationResult out;
  out.by_rate.reserve(plan.rates.size());
  RngStream root(plan.seed);

  if (plan.cumulative) {
    // One shared permutation and value stream; each rate's cell set is a
    // prefix of the next, so earlier outliers keep their drawn values.
    std::size_t n_max = 0;
    for (double rate : plan.rates)
      n_max = std::max(n_max, static_cast<std::size_t>(rate * static_cast<double>(n_cells)));
    RngStream cells_stream = root.child("cells");
    RngStream values_stream = root.child("values");
    const std::vector<std::size_t> order = sample_cells(cells_stream, n_cells, n_max);
    std::vector<double> drawn(n_max);
    for (std::size_t t = 0; t < n_max; ++t)
      drawn[t] = sample_normal(values_stream, plan.mu, plan.sigma);

    for (double rate : plan.rates) {
      const std::size_t n_take = static_cast<std::size_t>(rate * static_cast<double>(n_cells));
      if (n_take == 0) out.warnings.push_back(zero_cell_warning(rate));
      ContaminatedMatrix cm;
      cm.rate = rate;
      cm.matrix = m;
      cm.cells.reserve(n_take);
      for (std::size_t t = 0; t < n_take; ++t) {
        const std::size_t c = order[t];
        cm.matrix.values.v[c] = drawn[t];
        cm.cells.emplace_back(c / cols, c % cols);
      }
      out.by_rate.push_back(std::move(cm));
    }
  } else {
    for (std::size_t k = 0; k < plan.rates.size(); ++k) {
      const double rate = plan.rates[k];
      const std::size_t n_take = static_cast<std::size_t>(rate * static_cast<double>(n_cells));
      if (n_take == 0) out.warnings.push_back(zero_cell_warning(rate));
      RngStream cells_stream = root.child("cells", k);
      RngStream values_stream = root.child("values", k);
      const std::vector<std::size_t> order = sample_cells(cells_stream, n_cells, n_take);
      ContaminatedMatrix cm;
      cm.rate = rate;
      cm.matrix = m;
      cm.cells.reserve(n_take);
      for (std::size_t c : order) {
        cm.matrix.values.v[c] = sample_normal(values_stream, plan.mu, plan.sigma);
        cm.cells.emplace_back(c / cols, c % cols);
      }
      out.by_rate.push_back(std::move(cm));
    }
  }
  return out;
}

}  // namespace wscale
