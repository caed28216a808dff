#include "wscale/de.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <span>

#include "wscale/csv.hpp"
#include "wscale/dists.hpp"
#include "wscale/errors.hpp"
#include "wscale/parallel.hpp"

namespace wscale {

void DeConfig::validate() const {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw schema_error("de: alpha must lie in (0, 1)");
  if (!(fc_threshold >= 1.0)) throw schema_error("de: fc threshold must be >= 1");
}

namespace {

struct GroupStats {
  double mean = 0.0;
  double var = 0.0;  // sample variance, n-1 denominator
  std::size_t n = 0;
};

GroupStats group_stats(std::span<const double> row, const LabelVector& y, Label which) {
  GroupStats g;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (y[j] == which) {
      g.mean += row[j];
      ++g.n;
    }
  g.mean /= static_cast<double>(g.n);
  for (std::size_t j = 0; j < row.size(); ++j)
    if (y[j] == which) {
      const double d = row[j] - g.mean;
      g.var += d * d;
    }
  g.var /= static_cast<double>(g.n - 1);
  return g;
}

// t statistic and p value; se == 0 short-circuits to the exact degenerate
// answers (t = 0, p = 1 for equal means; t = +/-inf, p = 0 otherwise).
void t_test(const GroupStats& a, const GroupStats& b, bool welch, double& t, double& p) {
  const double diff = a.mean - b.mean;
  double se2, df;
  if (welch) {
    const double va = a.var / static_cast<double>(a.n);
    const double vb = b.var / static_cast<double>(b.n);
    se2 = va + vb;
    df = se2 * se2 /
         (va * va / static_cast<double>(a.n - 1) + vb * vb / static_cast<double>(b.n - 1));
  } else {
    const double na = static_cast<double>(a.n), nb = static_cast<double>(b.n);
    const double sp2 = ((na - 1.0) * a.var + (nb - 1.0) * b.var) / (na + nb - 2.0);
    se2 = sp2 * (1.0 / na + 1.0 / nb);
    df = na + nb - 2.0;
  }
  if (se2 <= 0.0) {
    t = diff == 0.0 ? 0.0
                    : std::copysign(std::numeric_limits<double>::infinity(), diff);
    p = diff == 0.0 ? 1.0 : 0.0;
    return;
  }
  t = diff / std::sqrt(se2);
  p = 2.0 * students_t_cdf(-std::abs(t), df);
}

}  // namespace

DeResult de_call(const MetaboliteMatrix& m, const LabelVector& y, const DeConfig& cfg) {
  cfg.validate();
  m.validate();
  validate_labels(m, y);
  std::size_t n_case = 0;
  for (Label l : y) n_case += l == Label::Case;
  if (n_case < 2 || y.size() - n_case < 2)
    throw schema_error("de: need at least two samples per class");

  DeResult out;
  out.rows.resize(m.values.rows);
  std::vector<char> zero_control(m.values.rows, 0), nonpos_mean(m.values.rows, 0);

  parallel_for(m.values.rows, [&](std::size_t i) {
    const auto row = m.values.row(i);
    const GroupStats cs = group_stats(row, y, Label::Case);
    const GroupStats ct = group_stats(row, y, Label::Control);

    DeRow& r = out.rows[i];
    r.metabolite_id = m.metabolite_ids[i];
    t_test(cs, ct, cfg.use_welch, r.t, r.p);

    const double raw_fc = cs.mean / ct.mean;  // +inf or nan when ct.mean == 0
    if (ct.mean == 0.0) zero_control[i] = 1;
    if (cs.mean <= 0.0 || ct.mean <= 0.0) nonpos_mean[i] = 1;
    r.de_flag = r.p < cfg.alpha && std::max(raw_fc, 1.0 / raw_fc) >= cfg.fc_threshold;
    r.fc = cfg.log_fc ? std::log2(raw_fc) : raw_fc;
  });

  std::size_t n_zero = 0, n_nonpos = 0;
  for (std::size_t i = 0; i < m.values.rows; ++i) {
    n_zero += zero_control[i];
    n_nonpos += nonpos_mean[i];
  }
  char buf[160];
  if (n_zero > 0) {
    std::snprintf(buf, sizeof buf,
                  "%zu row(s) have zero control mean; fold change is +inf/undefined there "
                  "and the DE flag falls to the p value alone",
                  n_zero);
    out.warnings.push_back(buf);
  }
  if (n_nonpos > n_zero) {
    std::snprintf(buf, sizeof buf,
                  "%zu row(s) have a non-positive group mean; ratio fold changes are not "
                  "meaningful on such (e.g. scaled) values - prefer raw-scale fold change",
                  n_nonpos);
    out.warnings.push_back(buf);
  }
  return out;
}

void write_de_csv(const std::string& path, const DeResult& result, const DeConfig& cfg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "# alpha=" << format_value(cfg.alpha) << " fc_threshold="
      << format_value(cfg.fc_threshold) << " welch=" << (cfg.use_welch ? 1 : 0)
      << " log_fc=" << (cfg.log_fc ? 1 : 0) << "\n";
  out << "metabolite_id,t,p,fc,de_flag\n";
  for (const auto& r : result.rows) {
    out << r.metabolite_id << ',' << format_value(r.t) << ',' << format_value(r.p) << ','
        << format_value(r.fc) << ',' << (r.de_flag ? 1 : 0) << "\n";
  }
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace wscale
