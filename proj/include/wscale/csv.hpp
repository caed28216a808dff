#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wscale/matrix.hpp"

namespace wscale {

// Matrix CSV schema: first row holds sample ids (corner cell ignored), first
// column holds metabolite ids, body is numeric. Lines starting with '#' are
// comments and skipped. Values are written with 17 significant digits so a
// write/read round trip is bit-exact.

MetaboliteMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const MetaboliteMatrix& m);

// Scaled output: same schema plus a leading "# method=..." comment line.
void write_scaled_csv(const std::filesystem::path& path, const ScaledMatrix& m);

// Flagged-rows sidecar: "metabolite_id,reason" per degenerate row.
void write_flags_csv(const std::filesystem::path& path, const ScaledMatrix& m);

// Labels file: two columns "sample_id,label"; labels case/control,
// case-insensitive; an optional literal "sample_id,label" header is skipped.
std::vector<std::pair<std::string, Label>> read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& sample_ids, const LabelVector& labels);

// Reorders label entries to the matrix's column order; schema_error on
// duplicate or missing sample ids.
LabelVector align_labels(const MetaboliteMatrix& m,
                         const std::vector<std::pair<std::string, Label>>& entries);

// Reads matrix + labels and aligns the labels to matrix column order.
std::pair<MetaboliteMatrix, LabelVector> ingest_csv(const std::filesystem::path& matrix_path,
                                                    const std::filesystem::path& labels_path);

// Two-column "fpr,tpr" curve files (header optional on read).
std::vector<std::pair<double, double>> read_roc_csv(const std::filesystem::path& path);
void write_roc_csv(const std::filesystem::path& path,
                   const std::vector<std::pair<double, double>>& points);

// 17-significant-digit decimal text; the round-trip-safe format used by all
// CSV writers.
std::string format_value(double x);

}  // namespace wscale
