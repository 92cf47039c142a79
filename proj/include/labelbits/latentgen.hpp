/// @file  latentgen.hpp
/// @brief Synthetic latent points clustered around class centroids.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace labelbits {

/// Ground-truth latent structure. Points occupy combined indices [0, n) and
/// centroids occupy [n, n+k) everywhere in the library.
struct LatentDataset {
	Eigen::MatrixXd points;        ///< n x d, one point per row
	Eigen::MatrixXd centroids;     ///< k x d, one centroid per row
	std::vector<int> assignments;  ///< generating class of each point
	double sigma = 0.0;
	std::uint64_t seed = 0;

	std::size_t n() const { return static_cast<std::size_t>(points.rows()); }
	std::size_t k() const { return static_cast<std::size_t>(centroids.rows()); }
	std::size_t d() const { return static_cast<std::size_t>(points.cols()); }
	std::size_t items() const { return n() + k(); }

	/// Points stacked above centroids, (n+k) x d.
	Eigen::MatrixXd stacked() const;
};

/// Upper triangle (i < j, row-major) of a symmetric similarity matrix.
class SimilarityMatrix {
public:
	SimilarityMatrix() = default;
	SimilarityMatrix(std::size_t size, std::vector<double> values, bool normalized);

	std::size_t size() const { return size_; }
	bool normalized() const { return normalized_; }
	const std::vector<double>& values() const { return values_; }

	/// Similarity of items i != j, order-independent.
	double at(std::size_t i, std::size_t j) const { return values_[pairIndex(i, j)]; }

	/// Position of pair {i, j} in the upper-triangle array.
	std::size_t pairIndex(std::size_t i, std::size_t j) const;

	/// Restriction to items [0, count).
	SimilarityMatrix leading(std::size_t count) const;

private:
	std::size_t size_ = 0;
	std::vector<double> values_;
	bool normalized_ = false;
};

/// Draws centroids from N(0, I_d), assigns point i to class i mod k and
/// perturbs it around its centroid with isotropic noise of deviation sigma.
LatentDataset generateDataset(std::size_t n, std::size_t k, std::size_t d,
	double sigma, std::uint64_t seed);

/// Pairwise cosine similarities (normalized) or inner products of the rows.
SimilarityMatrix similarityMatrix(const Eigen::MatrixXd& items, bool normalized);

} // namespace labelbits
