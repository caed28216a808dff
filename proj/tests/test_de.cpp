#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "wscale/de.hpp"
#include "wscale/errors.hpp"
#include "wscale/matrix.hpp"
#include "wscale/rng.hpp"

using namespace wscale;

namespace {

LabelVector split_labels(std::size_t n_case, std::size_t n_control) {
  LabelVector y(n_case, Label::Case);
  y.insert(y.end(), n_control, Label::Control);
  return y;
}

struct Moments {
  double mean = 0.0, var = 0.0;
  std::size_t n = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  for (double x : xs) m.mean += x;
  m.mean /= double(m.n);
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= double(m.n - 1);
  return m;
}

}  // namespace

TEST_CASE("identical groups are null on every column") {
  auto m = support::make_matrix(3, 10, [](std::size_t i, std::size_t j) {
    return double(i + 1) * (1.0 + double(j % 5));
  });
  // Label pattern CCCCC/RRRRR pairs identical value blocks.
  auto y = split_labels(5, 5);

  auto r = de_call(m, y, DeConfig{});
  REQUIRE(r.rows.size() == 3);
  CHECK(r.warnings.empty());
  for (const auto& row : r.rows) {
    CHECK(row.t == 0.0);
    CHECK(row.p == 1.0);
    CHECK(row.fc == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(!row.de_flag);
  }
}

TEST_CASE("a strongly shifted row is called") {
  RngStream rng(13);
  auto m = support::make_matrix(2, 12, [&](std::size_t i, std::size_t j) {
    const double base = (i == 0 && j < 6) ? 100.0 : 10.0;
    return base + rng.next_unit() * 0.01;
  });
  auto y = split_labels(6, 6);

  auto r = de_call(m, y, DeConfig{});
  CHECK(r.rows[0].metabolite_id == "M1");
  CHECK(r.rows[0].p < 1e-6);
  CHECK(r.rows[0].fc == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(r.rows[0].t > 0.0);
  CHECK(r.rows[0].de_flag);
  // Row two has equal means up to jitter: no call.
  CHECK(!r.rows[1].de_flag);
  CHECK(r.rows[1].fc == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("p values match quadrature of the t density") {
  RngStream rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t na = 3 + rng.next_below(8);
    const std::size_t nb = 3 + rng.next_below(8);
    std::vector<double> a(na), b(nb);
    for (auto& x : a) x = 5.0 + 3.0 * rng.next_unit();
    for (auto& x : b) x = 4.0 + 4.0 * rng.next_unit();

    MetaboliteMatrix m;
    m.values = Matrix(1, na + nb);
    m.metabolite_ids = {"M1"};
    for (std::size_t j = 0; j < na; ++j) m.values.at(0, j) = a[j];
    for (std::size_t j = 0; j < nb; ++j) m.values.at(0, na + j) = b[j];
    for (std::size_t j = 0; j < na + nb; ++j)
      m.sample_ids.push_back("S" + std::to_string(j + 1));
    auto y = split_labels(na, nb);

    const Moments ma = moments(a), mb = moments(b);

    SUBCASE("welch") {
      auto r = de_call(m, y, DeConfig{});
      const double va = ma.var / double(na), vb = mb.var / double(nb);
      const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
      const double df =
          (va + vb) * (va + vb) / (va * va / double(na - 1) + vb * vb / double(nb - 1));
      CHECK(std::abs(r.rows[0].t - t) < 1e-10);
      CHECK(std::abs(r.rows[0].p - oracle::t_two_sided_p(t, df)) < 1e-8);
    }
    SUBCASE("pooled") {
      DeConfig cfg;
      cfg.use_welch = false;
      auto r = de_call(m, y, cfg);
      const double sp2 =
          ((double(na) - 1) * ma.var + (double(nb) - 1) * mb.var) / double(na + nb - 2);
      const double t = (ma.mean - mb.mean) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
      CHECK(std::abs(r.rows[0].t - t) < 1e-10);
      CHECK(std::abs(r.rows[0].p - oracle::t_two_sided_p(t, double(na + nb - 2))) < 1e-8);
    }
  }
}

TEST_CASE("sample order does not matter") {
  RngStream rng(19);
  auto m = support::make_matrix(4, 14, [&](std::size_t, std::size_t) {
    return 1.0 + rng.next_unit() * 9.0;
  });
  auto y = split_labels(7, 7);
  auto base = de_call(m, y, DeConfig{});

  // Swap samples 0<->13 and 2<->7 (values, ids, labels move together).
  MetaboliteMatrix p = m;
  LabelVector py = y;
  auto swap_samples = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < p.values.rows; ++i)
      std::swap(p.values.at(i, a), p.values.at(i, b));
    std::swap(p.sample_ids[a], p.sample_ids[b]);
    std::swap(py[a], py[b]);
  };
  swap_samples(0, 13);
  swap_samples(2, 7);

  auto perm = de_call(p, py, DeConfig{});
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    CHECK(std::abs(base.rows[i].t - perm.rows[i].t) < 1e-12);
    CHECK(std::abs(base.rows[i].p - perm.rows[i].p) < 1e-12);
    CHECK(std::abs(base.rows[i].fc - perm.rows[i].fc) < 1e-12);
    CHECK(base.rows[i].de_flag == perm.rows[i].de_flag);
  }
}

TEST_CASE("tightening either threshold only removes flags") {
  RngStream rng(23);
  auto m = support::make_matrix(50, 16, [&](std::size_t i, std::size_t j) {
    const double shift = (i % 3 == 0 && j < 8) ? 0.4 * double(i % 7) : 0.0;
    return 5.0 + shift + rng.next_unit();
  });
  auto y = split_labels(8, 8);

  DeConfig loose;
  loose.alpha = 0.2;
  loose.fc_threshold = 1.0;
  auto base = de_call(m, y, loose);

  DeConfig tight_a = loose;
  tight_a.alpha = 0.01;
  DeConfig tight_f = loose;
  tight_f.fc_threshold = 1.1;
  auto ra = de_call(m, y, tight_a);
  auto rf = de_call(m, y, tight_f);
  bool any = false;
  for (std::size_t i = 0; i < base.rows.size(); ++i) {
    any |= base.rows[i].de_flag;
    if (ra.rows[i].de_flag) CHECK(base.rows[i].de_flag);
    if (rf.rows[i].de_flag) CHECK(base.rows[i].de_flag);
  }
  CHECK(any);  // the fixture must exercise some flags for this to mean anything
}

TEST_CASE("zero control mean: infinite fc, p-only flag, warning") {
  MetaboliteMatrix m;
  m.values = Matrix(2, 8);
  m.metabolite_ids = {"M1", "M2"};
  for (std::size_t j = 0; j < 8; ++j) m.sample_ids.push_back("S" + std::to_string(j + 1));
  const double cases1[] = {4.0, 5.0, 6.0, 5.0};
  for (std::size_t j = 0; j < 4; ++j) {
    m.values.at(0, j) = cases1[j];
    m.values.at(0, 4 + j) = 0.0;            // control mean exactly 0
    m.values.at(1, j) = 2.0 + 0.1 * j;      // unremarkable row
    m.values.at(1, 4 + j) = 2.1 + 0.1 * j;
  }
  auto y = split_labels(4, 4);

  auto r = de_call(m, y, DeConfig{});
  CHECK(r.rows[0].fc == std::numeric_limits<double>::infinity());
  CHECK(r.rows[0].p < 0.05);
  CHECK(r.rows[0].de_flag);  // falls to the p value alone
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("zero control mean") != std::string::npos);
  CHECK(!r.rows[1].de_flag);
}

TEST_CASE("non-positive means elicit the scaled-values warning") {
  auto m = support::make_matrix(1, 8, [](std::size_t, std::size_t j) {
    return j < 4 ? -2.0 - 0.1 * double(j) : 1.0 + 0.1 * double(j);
  });
  auto y = split_labels(4, 4);
  auto r = de_call(m, y, DeConfig{});
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("non-positive group mean") != std::string::npos);
  // A negative ratio can never clear a >= 1 threshold.
  CHECK(!r.rows[0].de_flag);
}

TEST_CASE("log_fc changes the report scale, never the flags") {
  RngStream rng(29);
  auto m = support::make_matrix(20, 12, [&](std::size_t i, std::size_t j) {
    const double lift = (i < 10 && j < 6) ? 2.5 : 1.0;
    return lift * (3.0 + rng.next_unit());
  });
  auto y = split_labels(6, 6);

  auto raw = de_call(m, y, DeConfig{});
  DeConfig cfg;
  cfg.log_fc = true;
  auto logged = de_call(m, y, cfg);
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    CHECK(logged.rows[i].de_flag == raw.rows[i].de_flag);
    CHECK(logged.rows[i].fc == doctest::Approx(std::log2(raw.rows[i].fc)).epsilon(1e-12));
    CHECK(logged.rows[i].t == raw.rows[i].t);
    CHECK(logged.rows[i].p == raw.rows[i].p);
  }
}

TEST_CASE("config and input validation") {
  auto m = support::make_matrix(2, 6, [](std::size_t i, std::size_t j) {
    return double(i + j + 1);
  });
  auto y = split_labels(3, 3);

  SUBCASE("alpha bounds") {
    DeConfig cfg;
    cfg.alpha = 0.0;
    CHECK_THROWS_WITH_AS(de_call(m, y, cfg), doctest::Contains("alpha"), schema_error);
    cfg.alpha = 1.0;
    CHECK_THROWS_AS(de_call(m, y, cfg), schema_error);
  }
  SUBCASE("fc threshold below 1") {
    DeConfig cfg;
    cfg.fc_threshold = 0.5;
    CHECK_THROWS_WITH_AS(de_call(m, y, cfg), doctest::Contains("fc threshold"), schema_error);
  }
  SUBCASE("needs two samples per class") {
    LabelVector thin = {Label::Case, Label::Control, Label::Control,
                        Label::Control, Label::Control, Label::Control};
    CHECK_THROWS_WITH_AS(de_call(m, thin, DeConfig{}),
                         doctest::Contains("two samples per class"), schema_error);
  }
}

TEST_CASE("de csv carries the config comment and one row per metabolite") {
  support::TempDir dir;
  auto m = support::make_matrix(2, 8, [](std::size_t i, std::size_t j) {
    return i == 0 && j < 4 ? 9.0 + 0.01 * double(j) : 3.0 + 0.01 * double(j);
  });
  auto y = split_labels(4, 4);
  DeConfig cfg;
  cfg.alpha = 0.01;
  cfg.fc_threshold = 2.0;
  auto r = de_call(m, y, cfg);

  const std::string path = dir.file("de.csv");
  write_de_csv(path, r, cfg);
  const std::string text = support::read_file(path);

  CHECK(text.find("# alpha=0.01 fc_threshold=2 welch=1 log_fc=0\n") == 0);
  CHECK(text.find("metabolite_id,t,p,fc,de_flag\n") != std::string::npos);
  CHECK(text.find("\nM1,") != std::string::npos);
  CHECK(text.find("\nM2,") != std::string::npos);
  // Flag digits land at line ends.
  CHECK(text.find(",1\n") != std::string::npos);
  CHECK(text.find(",0\n") != std::string::npos);
  CHECK(text.back() == '\n');
}
