#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wscale {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), v(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {v.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {v.data() + r * cols, cols}; }

  bool operator==(const Matrix&) const = default;
};

Matrix transpose(const Matrix& m);

enum class Label { Control = 0, Case = 1 };

using LabelVector = std::vector<Label>;

// Parses "case"/"control" (case-insensitive); throws schema_error otherwise.
Label parse_label(std::string_view text);
const char* label_name(Label l);

// Metabolite concentration table. Rows are metabolites, columns are samples;
// every per-metabolite statistic in the scalers runs along a row.
struct MetaboliteMatrix {
  Matrix values;
  std::vector<std::string> metabolite_ids;  // size == values.rows
  std::vector<std::string> sample_ids;      // size == values.cols

  // Enforces: all cells finite, >= 1 row, >= 2 columns, unique ids.
  // Throws schema_error.
  void validate() const;

  bool operator==(const MetaboliteMatrix&) const = default;
};

// Checks labels are aligned to the matrix columns and both classes occur.
void validate_labels(const MetaboliteMatrix& m, const LabelVector& labels);

struct RowFlag {
  std::size_t row = 0;
  std::string reason;
  bool operator==(const RowFlag&) const = default;
};

// Result of applying one scaling method. Shape and ids match the source;
// degenerate rows are emitted as zeros and listed in flags.
struct ScaledMatrix {
  Matrix values;
  std::vector<std::string> metabolite_ids;
  std::vector<std::string> sample_ids;
  std::string method;  // auto|range|pareto|vast|level|weighted
  std::string params;  // textual echo of the parameters used
  std::vector<RowFlag> flags;
};

// Sample-major view for the classifiers: output row k is input column k.
Matrix classification_table(const ScaledMatrix& m);

}  // namespace wscale
