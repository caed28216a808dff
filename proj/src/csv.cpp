#include "wscale/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "wscale/errors.hpp"

namespace wscale {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  return out;
}

double parse_cell(const std::string& text, const std::string& row_id, const std::string& col_id) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw schema_error("cannot parse cell '" + text + "' at row '" + row_id + "', column '" +
                       col_id + "'");
  }
  return value;
}

}  // namespace

std::string format_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

MetaboliteMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::string line;
  std::vector<std::string> sample_ids;
  std::vector<std::string> metabolite_ids;
  std::vector<double> cells;

  bool have_header = false;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields.size() < 2) throw schema_error("matrix header needs at least one sample column");
      sample_ids.assign(fields.begin() + 1, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != sample_ids.size() + 1) {
      throw schema_error("row '" + (fields.empty() ? std::string("?") : fields[0]) +
                         "' has " + std::to_string(fields.size() ? fields.size() - 1 : 0) +
                         " cells, expected " + std::to_string(sample_ids.size()));
    }
    metabolite_ids.push_back(fields[0]);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      cells.push_back(parse_cell(fields[c], fields[0], sample_ids[c - 1]));
    }
  }
  if (!have_header) throw schema_error("matrix file '" + path.string() + "' is empty");

  MetaboliteMatrix m;
  m.values.rows = metabolite_ids.size();
  m.values.cols = sample_ids.size();
  m.values.v = std::move(cells);
  m.metabolite_ids = std::move(metabolite_ids);
  m.sample_ids = std::move(sample_ids);
  m.validate();
  return m;
}

namespace {

void write_matrix_body(std::ofstream& out, const Matrix& values,
                       const std::vector<std::string>& metabolite_ids,
                       const std::vector<std::string>& sample_ids) {
  out << "id";
  for (const auto& s : sample_ids) out << ',' << s;
  out << '\n';
  for (std::size_t r = 0; r < values.rows; ++r) {
    out << metabolite_ids[r];
    for (std::size_t c = 0; c < values.cols; ++c) out << ',' << format_value(values.at(r, c));
    out << '\n';
  }
}

}  // namespace

void write_matrix_csv(const std::filesystem::path& path, const MetaboliteMatrix& m) {
  auto out = open_for_write(path);
  write_matrix_body(out, m.values, m.metabolite_ids, m.sample_ids);
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

void write_scaled_csv(const std::filesystem::path& path, const ScaledMatrix& m) {
  auto out = open_for_write(path);
  out << "# method=" << m.method;
  if (!m.params.empty()) out << ' ' << m.params;
  out << '\n';
  write_matrix_body(out, m.values, m.metabolite_ids, m.sample_ids);
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

void write_flags_csv(const std::filesystem::path& path, const ScaledMatrix& m) {
  auto out = open_for_write(path);
  out << "metabolite_id,reason\n";
  for (const auto& f : m.flags) out << m.metabolite_ids[f.row] << ',' << f.reason << '\n';
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

std::vector<std::pair<std::string, Label>> read_labels_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<std::pair<std::string, Label>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw schema_error("labels file line " + std::to_string(line_no) +
                         ": expected 'sample_id,label'");
    }
    if (line_no == 1 && fields[1] == "label") continue;  // header
    out.emplace_back(fields[0], parse_label(fields[1]));
  }
  if (out.empty()) throw schema_error("labels file '" + path.string() + "' has no entries");
  return out;
}

void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& sample_ids, const LabelVector& labels) {
  if (sample_ids.size() != labels.size()) {
    throw std::invalid_argument("write_labels_csv: id/label size mismatch");
  }
  auto out = open_for_write(path);
  out << "sample_id,label\n";
  for (std::size_t i = 0; i < sample_ids.size(); ++i) {
    out << sample_ids[i] << ',' << label_name(labels[i]) << '\n';
  }
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

LabelVector align_labels(const MetaboliteMatrix& m,
                         const std::vector<std::pair<std::string, Label>>& entries) {
  std::unordered_map<std::string, Label> by_id;
  for (const auto& [id, label] : entries) {
    if (!by_id.emplace(id, label).second) {
      throw schema_error("duplicate sample id '" + id + "' in labels file");
    }
  }

  LabelVector labels;
  labels.reserve(m.sample_ids.size());
  for (const auto& id : m.sample_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw schema_error("no label for sample '" + id + "'");
    labels.push_back(it->second);
  }
  validate_labels(m, labels);
  return labels;
}

std::pair<MetaboliteMatrix, LabelVector> ingest_csv(const std::filesystem::path& matrix_path,
                                                    const std::filesystem::path& labels_path) {
  MetaboliteMatrix m = read_matrix_csv(matrix_path);
  LabelVector labels = align_labels(m, read_labels_csv(labels_path));
  return {std::move(m), std::move(labels)};
}

std::vector<std::pair<double, double>> read_roc_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::vector<std::pair<double, double>> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line == "fpr,tpr") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw schema_error("roc file '" + path.string() + "' line " + std::to_string(line_no) +
                         ": expected 'fpr,tpr'");
    }
    const char* what = "roc point";
    char* end = nullptr;
    const double fpr = std::strtod(fields[0].c_str(), &end);
    if (end == fields[0].c_str() || *end != '\0' || !std::isfinite(fpr)) {
      throw schema_error("roc file '" + path.string() + "' line " + std::to_string(line_no) +
                         ": bad " + what);
    }
    const double tpr = std::strtod(fields[1].c_str(), &end);
    if (end == fields[1].c_str() || *end != '\0' || !std::isfinite(tpr)) {
      throw schema_error("roc file '" + path.string() + "' line " + std::to_string(line_no) +
                         ": bad " + what);
    }
    points.emplace_back(fpr, tpr);
  }
  if (points.empty()) {
    throw schema_error("roc file '" + path.string() + "' has no points");
  }
  return points;
}

void write_roc_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& points) {
  auto out = open_for_write(path);
  out << "fpr,tpr\n";
  for (const auto& [fpr, tpr] : points) {
    out << format_value(fpr) << ',' << format_value(tpr) << '\n';
  }
  if (!out) throw io_error("failed writing '" + path.string() + "'");
}

}  // namespace wscale
