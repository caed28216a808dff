#include "wscale/matrix.hpp"

#include <cctype>
#include <cmath>
#include <unordered_set>

#include "wscale/errors.hpp"

namespace wscale {

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      t.at(c, r) = m.at(r, c);
    }
  }
  return t;
}

Label parse_label(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "case") return Label::Case;
  if (lower == "control") return Label::Control;
  throw schema_error("unknown label '" + std::string(text) + "' (expected case or control)");
}

const char* label_name(Label l) { return l == Label::Case ? "case" : "control"; }

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw schema_error(std::string("duplicate ") + what + " id '" + id + "'");
    }
  }
}

}  // namespace

void MetaboliteMatrix::validate() const {
  if (values.rows < 1) throw schema_error("matrix needs at least one metabolite row");
  if (values.cols < 2) throw schema_error("matrix needs at least two sample columns");
  if (metabolite_ids.size() != values.rows || sample_ids.size() != values.cols) {
    throw schema_error("id lists do not match the matrix shape");
  }
  check_unique(metabolite_ids, "metabolite");
  check_unique(sample_ids, "sample");
  for (std::size_t r = 0; r < values.rows; ++r) {
    for (std::size_t c = 0; c < values.cols; ++c) {
      if (!std::isfinite(values.at(r, c))) {
        throw schema_error("non-finite value at row '" + metabolite_ids[r] + "', column '" +
                           sample_ids[c] + "'");
      }
    }
  }
}

void validate_labels(const MetaboliteMatrix& m, const LabelVector& labels) {
  if (labels.size() != m.values.cols) {
    throw schema_error("label count does not match the sample count");
  }
  bool has_case = false;
  bool has_control = false;
  for (Label l : labels) (l == Label::Case ? has_case : has_control) = true;
  if (!has_case || !has_control) {
    throw schema_error("labels must contain both case and control samples");
  }
}

Matrix classification_table(const ScaledMatrix& m) { return transpose(m.values); }

}  // namespace wscale
