/// @file  labels.hpp
/// @brief Label constructions derived from a LatentDataset and the
///        sparsifying / encoding transforms applied to them.

#pragma once

#include <labelbits/latentgen.hpp>

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace labelbits {

enum class LabelKind { Hard, Soft, Smoothed, Typicality, SparseSoft, TopClass, PcaCoords };

std::string_view toString(LabelKind kind);
LabelKind labelKindFromString(std::string_view name);

/// True for kinds whose rows are (possibly zeroed) probability vectors.
bool isSoftVariant(LabelKind kind);

struct LabelSet {
	LabelKind kind = LabelKind::Hard;
	Eigen::MatrixXd values;                ///< one row per labelled item
	std::optional<int> k_hat;
	std::vector<int> retained_columns;     ///< TopClass only, ascending

	std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
	std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

/// One-hot at the Euclidean-nearest centroid, ties toward the lower class.
LabelSet hardLabels(const LatentDataset& data);

/// Softmax of negative point-to-centroid Euclidean distances.
LabelSet softLabels(const LatentDataset& data);

/// 1 - epsilon on the true class, epsilon / (k - 1) on each other class.
LabelSet smoothLabels(const LabelSet& hard, double epsilon);

/// p_i on the true class, (1 - p_i) / (k - 1) on each other class.
LabelSet typicalityLabels(const LabelSet& hard, const std::vector<double>& typicality);

/// Per-point typicality scores used by sweeps: soft mass on the hard class.
std::vector<double> defaultTypicality(const LabelSet& hard, const LabelSet& soft);

/// Keeps the k_hat largest entries of every row and zeroes the rest.
/// Cutoff ties go to the lower class index. Rows are rescaled to sum to one
/// only when `renormalize` is set.
LabelSet sparsifyLabels(const LabelSet& soft, int k_hat, bool renormalize = false);

/// Plug-in mutual information (bits) between the pair distances
/// |col_a - col_b| of a label column and the reference similarities, both
/// discretized into `bins` equal-frequency bins.
double columnMutualInformation(const Eigen::VectorXd& column,
	const SimilarityMatrix& reference, int bins = 8);

/// Zeroes all but the k_hat columns carrying the most mutual information
/// about the reference point similarities. Equal scores favour lower columns.
LabelSet topclassLabels(const LabelSet& soft, int k_hat,
	const SimilarityMatrix& reference, int bins = 8);

/// Coordinates of all n+k items (points, then centroids) in their top k_hat
/// principal directions. Each direction's largest-magnitude loading is
/// positive.
LabelSet pcaEncode(const LatentDataset& data, int k_hat);

/// Same encoding applied to an arbitrary item matrix (one item per row).
LabelSet pcaEncode(const Eigen::MatrixXd& items, int k_hat);

/// Item matrix for PCA over label space instead of latent space: soft rows
/// for points, one-hot rows for centroids.
Eigen::MatrixXd softLabelItems(const LabelSet& soft);

} // namespace labelbits
