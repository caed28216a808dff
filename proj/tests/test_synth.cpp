#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wscale/de.hpp"
#include "wscale/errors.hpp"
#include "wscale/synth.hpp"

using namespace wscale;

TEST_CASE("generate produces the default cohort shape") {
  SynthConfig cfg;
  cfg.seed = 7;
  auto r = generate(cfg);

  CHECK(r.matrix.values.rows == 236);
  CHECK(r.matrix.values.cols == 197);
  CHECK(r.matrix.metabolite_ids.size() == 236);
  CHECK(r.matrix.sample_ids.size() == 197);
  CHECK_NOTHROW(r.matrix.validate());

  REQUIRE(r.labels.size() == 197);
  std::size_t cases = 0;
  for (Label l : r.labels) cases += (l == Label::Case);
  CHECK(cases == 106);
  // Case columns first, then controls.
  CHECK(r.labels.front() == Label::Case);
  CHECK(r.labels[105] == Label::Case);
  CHECK(r.labels[106] == Label::Control);
  CHECK(r.labels.back() == Label::Control);

  REQUIRE(r.truth.de_metabolite_ids.size() == 118);
  // DE ids are actual matrix row ids, unique.
  std::set<std::string> ids(r.matrix.metabolite_ids.begin(), r.matrix.metabolite_ids.end());
  std::set<std::string> de(r.truth.de_metabolite_ids.begin(), r.truth.de_metabolite_ids.end());
  CHECK(de.size() == 118);
  for (const auto& id : de) CHECK(ids.count(id) == 1);

  // Counts: nonnegative integers.
  for (double v : r.matrix.values.v) {
    CHECK(v >= 0.0);
    CHECK(v == std::floor(v));
  }
}

TEST_CASE("generate is deterministic per seed and varies across seeds") {
  SynthConfig cfg;
  cfg.seed = 42;
  auto a = generate(cfg);
  auto b = generate(cfg);
  CHECK(a.matrix == b.matrix);
  CHECK(a.labels == b.labels);
  CHECK(a.truth.de_metabolite_ids == b.truth.de_metabolite_ids);

  cfg.seed = 43;
  auto c = generate(cfg);
  CHECK(a.matrix.values.v != c.matrix.values.v);
}

TEST_CASE("DE rows separate the groups, non-DE rows do not") {
  SynthConfig cfg;
  cfg.seed = 3;
  cfg.n_metabolites = 60;
  cfg.n_de = 30;
  cfg.n_case = 50;
  cfg.n_control = 50;
  auto r = generate(cfg);

  std::set<std::string> de(r.truth.de_metabolite_ids.begin(), r.truth.de_metabolite_ids.end());
  DeConfig dc;
  auto calls = de_call(r.matrix, r.labels, dc);

  // nb(30, 0.5) has mean 30 vs nb(10, 0.5) mean 10: the planted rows are
  // blatant at n=100, so group means should reflect the 3x design.
  std::size_t de_hits = 0, null_hits = 0;
  for (const auto& row : calls.rows) {
    if (de.count(row.metabolite_id)) {
      de_hits += (row.p < 1e-4 && row.fc > 2.0);
    } else {
      null_hits += (row.p < 1e-4);
    }
  }
  CHECK(de_hits == 30);
  CHECK(null_hits == 0);
}

TEST_CASE("null configuration yields null t statistics") {
  // With case and control drawing from the same distribution the planted
  // block disappears; mean |t| over rows should sit near E|t| ~ 0.8 and
  // nowhere near the separated regime.
  SynthConfig cfg;
  cfg.seed = 11;
  cfg.n_metabolites = 1000;
  cfg.n_de = 500;
  cfg.n_case = 30;
  cfg.n_control = 30;
  cfg.nb_case_de = cfg.nb_control;
  auto r = generate(cfg);

  DeConfig dc;
  auto calls = de_call(r.matrix, r.labels, dc);
  double mean_abs_t = 0.0;
  std::size_t small_p = 0;
  for (const auto& row : calls.rows) {
    mean_abs_t += std::abs(row.t);
    small_p += (row.p < 0.05);
  }
  mean_abs_t /= double(calls.rows.size());
  // E|t| for t(df~58) is sqrt(2/pi)*df/(df-2)-ish ~ 0.81; allow 3 SE slack.
  CHECK(mean_abs_t > 0.65);
  CHECK(mean_abs_t < 1.0);
  // About 5% of null rows clear p < 0.05; 1000 rows -> ~50 +- 21 (3 sigma).
  CHECK(small_p > 15);
  CHECK(small_p < 120);
}

TEST_CASE("SynthConfig validation") {
  SynthConfig cfg;
  cfg.n_de = 300;  // more DE rows than rows
  CHECK_THROWS_AS(cfg.validate(), schema_error);
  cfg = SynthConfig{};
  cfg.n_case = 0;
  CHECK_THROWS_AS(cfg.validate(), schema_error);
  cfg = SynthConfig{};
  cfg.nb_control.p = 1.5;
  CHECK_THROWS_AS(cfg.validate(), schema_error);
  cfg = SynthConfig{};
  cfg.nb_case_de.r = -1;
  CHECK_THROWS_AS(cfg.validate(), schema_error);
}

TEST_CASE("contaminate replaces floor(rate * cells) distinct cells") {
  auto m = support::make_matrix(100, 100, [](std::size_t i, std::size_t j) {
    return double((i * 31 + j * 17) % 50);
  });
  ContaminationPlan plan;
  plan.rates = {0.01};
  plan.mu = 1000;
  plan.sigma = 1;
  plan.seed = 5;

  auto r = contaminate(m, plan);
  REQUIRE(r.by_rate.size() == 1);
  CHECK(r.by_rate[0].rate == 0.01);
  CHECK(r.by_rate[0].cells.size() == 100);  // floor(0.01 * 10000)

  std::set<CellIndex> distinct(r.by_rate[0].cells.begin(), r.by_rate[0].cells.end());
  CHECK(distinct.size() == 100);

  // Exactly the listed cells differ from the source.
  std::size_t changed = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    for (std::size_t j = 0; j < 100; ++j) {
      if (r.by_rate[0].matrix.values.at(i, j) != m.values.at(i, j)) ++changed;
    }
  }
  CHECK(changed == 100);
  for (const auto& [ci, cj] : distinct) {
    CHECK(r.by_rate[0].matrix.values.at(ci, cj) != m.values.at(ci, cj));
  }
}

TEST_CASE("cumulative rates nest strictly and keep replaced values stable") {
  auto m = support::make_matrix(50, 40, [](std::size_t i, std::size_t j) {
    return double(i + j);
  });
  ContaminationPlan plan;
  plan.rates = {0.01, 0.03, 0.05};
  plan.mu = 500;
  plan.sigma = 2;
  plan.seed = 9;

  auto r = contaminate(m, plan);
  REQUIRE(r.by_rate.size() == 3);
  const std::size_t cells = 50 * 40;
  CHECK(r.by_rate[0].cells.size() == std::size_t(std::floor(0.01 * cells)));  // 20
  CHECK(r.by_rate[1].cells.size() == std::size_t(std::floor(0.03 * cells)));  // 60
  CHECK(r.by_rate[2].cells.size() == std::size_t(std::floor(0.05 * cells)));  // 100

  for (std::size_t k = 1; k < 3; ++k) {
    std::set<CellIndex> prev(r.by_rate[k - 1].cells.begin(), r.by_rate[k - 1].cells.end());
    std::set<CellIndex> cur(r.by_rate[k].cells.begin(), r.by_rate[k].cells.end());
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    CHECK(cur.size() > prev.size());
  }

  // A cell contaminated at 1% holds the same replacement value at 3% and 5%,
  // and untouched cells stay bitwise equal to the source at every rate.
  for (const auto& cell : r.by_rate[0].cells) {
    const double v = r.by_rate[0].matrix.values.at(cell.first, cell.second);
    CHECK(r.by_rate[1].matrix.values.at(cell.first, cell.second) == v);
    CHECK(r.by_rate[2].matrix.values.at(cell.first, cell.second) == v);
  }
  for (const auto& cm : r.by_rate) {
    std::set<CellIndex> hit(cm.cells.begin(), cm.cells.end ());
    for (std::size_t i = 0; i < 50; ++i) {
      for (std::size_t j = 0; j < 40; ++j) {
        if (!hit.count({i, j})) CHECK(cm.matrix.values.at(i, j) == m.values.at(i, j));
      }
    }
  }
}

TEST_CASE("non-cumulative mode draws each rate independently") {
  auto m = support::make_matrix(30, 30, [](std::size_t i, std::size_t j) {
    return double(i * j % 10);
  });
  ContaminationPlan plan;
  plan.rates = {0.02, 0.04};
  plan.mu = 99;
  plan.sigma = 1;
  plan.seed = 1;
  plan.cumulative = false;

  auto r = contaminate(m, plan);
  CHECK(r.by_rate[0].cells.size() == 18);
  CHECK(r.by_rate[1].cells.size() == 36);
  // Independent draws almost surely differ from a nested prefix.
  std::set<CellIndex> a(r.by_rate[0].cells.begin(), r.by_rate[0].cells.end());
  std::set<CellIndex> b(r.by_rate[1].cells.begin(), r.by_rate[1].cells.end());
  CHECK(!std::includes(b.begin(), b.end(), a.begin(), a.end()));
}

TEST_CASE("contamination at mu = max + 3 sigma lands above the original ceiling") {
  SynthConfig cfg;
  cfg.seed = 13;
  cfg.n_metabolites = 50;
  cfg.n_de = 25;
  cfg.n_case = 20;
  cfg.n_control = 20;
  auto r = generate(cfg);

  const double mx = matrix_max(r.matrix);
  ContaminationPlan plan;
  plan.rates = {0.05};
  plan.sigma = default_contamination_sigma(r.matrix);
  plan.mu = mx + 3.0 * plan.sigma;
  plan.seed = 2;

  auto c = contaminate(r.matrix, plan);
  std::size_t above = 0;
  for (const auto& cell : c.by_rate[0].cells) {
    above += (c.by_rate[0].matrix.values.at(cell.first, cell.second) > mx);
  }
  // Replacement draws sit 3 sigma above the max on average: >= 95% clear it.
  CHECK(double(above) >= 0.95 * double(c.by_rate[0].cells.size()));
}

TEST_CASE("contaminate is deterministic and seed-sensitive") {
  auto m = support::make_matrix(20, 20, [](std::size_t i, std::size_t j) {
    return double(i + 2 * j);
  });
  ContaminationPlan plan;
  plan.rates = {0.03, 0.07};
  plan.mu = 77;
  plan.sigma = 3;
  plan.seed = 21;

  auto a = contaminate(m, plan);
  auto b = contaminate(m, plan);
  REQUIRE(a.by_rate.size() == b.by_rate.size());
  for (std::size_t k = 0; k < a.by_rate.size(); ++k) {
    CHECK(a.by_rate[k].matrix == b.by_rate[k].matrix);
    CHECK(a.by_rate[k].cells == b.by_rate[k].cells);
  }

  plan.seed = 22;
  auto c = contaminate(m, plan);
  CHECK(a.by_rate[0].cells != c.by_rate[0].cells);
}

TEST_CASE("plan validation and the zero-cell warning") {
  auto m = support::make_matrix(5, 4, [](std::size_t i, std::size_t j) {
    return double(i + j);
  });

  ContaminationPlan plan;
  plan.mu = 100;
  plan.rates = {0.0};
  CHECK_THROWS_AS(plan.validate(m), schema_error);
  plan.rates = {1.5};
  CHECK_THROWS_AS(plan.validate(m), schema_error);
  plan.rates = {0.05, 0.03};  // must be increasing for cumulative nesting
  CHECK_THROWS_AS(plan.validate(m), schema_error);
  plan.rates = {0.03};
  plan.sigma = -1;
  CHECK_THROWS_AS(plan.validate(m), schema_error);
  plan.sigma = 1;
  plan.mu = 5;  // below the matrix max of 7
  CHECK_THROWS_AS(plan.validate(m), schema_error);

  // floor(0.01 * 20) == 0 cells: allowed, but warned about.
  plan = ContaminationPlan{};
  plan.rates = {0.01, 0.5};
  plan.mu = 100;
  plan.sigma = 1;
  auto r = contaminate(m, plan);
  CHECK(r.by_rate[0].cells.empty());
  CHECK(r.by_rate[1].cells.size() == 10);
  REQUIRE(!r.warnings.empty());
  CHECK(r.warnings[0].find("fewer than one cell") != std::string::npos);
}

TEST_CASE("default contamination parameters derive from the matrix") {
  auto m = support::make_matrix(2, 3, [](std::size_t i, std::size_t j) {
    return double(i * 3 + j);  // 0..5
  });
  CHECK(matrix_max(m) == 5.0);
  CHECK(default_contamination_mu(m) == 7.5);
  // Sample sd over all 6 cells of 0..5: sqrt(17.5/5) = sqrt(3.5).
  CHECK(default_contamination_sigma(m) == doctest::Approx(std::sqrt(3.5)).epsilon(1e-12));
}
