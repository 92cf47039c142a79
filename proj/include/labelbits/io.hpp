/// @file  io.hpp
/// @brief CSV / JSON interchange formats.

#pragma once

#include <labelbits/gnmds.hpp>
#include <labelbits/labels.hpp>
#include <labelbits/latentgen.hpp>
#include <labelbits/triplets.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace labelbits {

/// Shortest decimal text that reads back to the same double.
std::string formatDouble(double value);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> splitCsvLine(std::string_view line);

std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, std::string_view content);

/// `role,class,x0..x{d-1}` with points before centroids.
std::string datasetToCsv(const LatentDataset& data);

/// `kind,k_hat` header block (plus `retained_columns` for top-class), then
/// one row per labelled item.
std::string labelsToCsv(const LabelSet& labels);
LabelSet labelsFromCsv(std::string_view text);

/// `n,k,source_kind,flip_rate` header block, then `anchor,near,far` rows.
std::string constraintsToCsv(const ConstraintSet& set);
ConstraintSet constraintsFromCsv(std::string_view text);

/// Dense m x m matrix, one row per line.
std::string gramToCsv(const GramMatrix& gram);
Eigen::MatrixXd matrixFromCsv(std::string_view text);

/// {initial_objective, final_objective, iterations, satisfied_fraction}.
std::string diagnosticsToJson(const SolverDiagnostics& diagnostics);

} // namespace labelbits
