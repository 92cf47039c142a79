#include <labelbits/latentgen.hpp>
#include <labelbits/errors.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace labelbits {

Eigen::MatrixXd LatentDataset::stacked() const {
	Eigen::MatrixXd all(points.rows() + centroids.rows(), points.cols());
	all << points, centroids;
	return all;
}

SimilarityMatrix::SimilarityMatrix(std::size_t size, std::vector<double> values, bool normalized)
	: size_(size), values_(std::move(values)), normalized_(normalized) {
	if (values_.size() != size_ * (size_ - (size_ > 0 ? 1 : 0)) / 2) {
		throw ShapeError("similarity matrix over " + std::to_string(size_) +
			" items needs " + std::to_string(size_ * (size_ - 1) / 2) + " values");
	}
}

std::size_t SimilarityMatrix::pairIndex(std::size_t i, std::size_t j) const {
	if (i == j || i >= size_ || j >= size_) {
		throw ShapeError("invalid similarity pair (" + std::to_string(i) + ", " +
			std::to_string(j) + ")");
	}
	if (i > j) std::swap(i, j);
	return i * size_ - i * (i + 1) / 2 + (j - i - 1);
}

SimilarityMatrix SimilarityMatrix::leading(std::size_t count) const {
	if (count > size_) throw ShapeError("leading block larger than matrix");
	std::vector<double> out;
	out.reserve(count * (count - (count > 0 ? 1 : 0)) / 2);
	for (std::size_t i = 0; i < count; ++i)
		for (std::size_t j = i + 1; j < count; ++j) out.push_back(at(i, j));
	return SimilarityMatrix(count, std::move(out), normalized_);
}

LatentDataset generateDataset(std::size_t n, std::size_t k, std::size_t d,
	double sigma, std::uint64_t seed) {
	if (n < 1) throw ParameterError("n must be >= 1");
	if (k < 2) throw ParameterError("k must be >= 2");
	if (d < 1) throw ParameterError("d must be >= 1");
	if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");

	std::mt19937_64 rng(seed);
	std::normal_distribution<double> normal(0.0, 1.0);

	LatentDataset data;
	data.sigma = sigma;
	data.seed = seed;
	data.centroids.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d));
	for (Eigen::Index c = 0; c < data.centroids.rows(); ++c)
		for (Eigen::Index j = 0; j < data.centroids.cols(); ++j) data.centroids(c, j) = normal(rng);

	data.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
	data.assignments.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		const int cls = static_cast<int>(i % k);
		data.assignments[i] = cls;
		for (std::size_t j = 0; j < d; ++j) {
			data.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
				data.centroids(cls, static_cast<Eigen::Index>(j)) + sigma * normal(rng);
		}
	}
	return data;
}

SimilarityMatrix similarityMatrix(const Eigen::MatrixXd& items, bool normalized) {
	const auto m = static_cast<std::size_t>(items.rows());
	Eigen::VectorXd norms = items.rowwise().norm();
	if (normalized) {
		for (Eigen::Index i = 0; i < norms.size(); ++i) {
			if (norms(i) == 0.0) {
				throw DegenerateInputError("zero vector at item " + std::to_string(i) +
					" cannot be cosine-normalized");
			}
		}
	}
	std::vector<double> values;
	values.reserve(m * (m - (m > 0 ? 1 : 0)) / 2);
	for (Eigen::Index i = 0; i < items.rows(); ++i) {
		for (Eigen::Index j = i + 1; j < items.rows(); ++j) {
			double s = items.row(i).dot(items.row(j));
			if (normalized) s = std::clamp(s / (norms(i) * norms(j)), -1.0, 1.0);
			values.push_back(s);
		}
	}
	return SimilarityMatrix(m, std::move(values), normalized);
}

} // namespace labelbits
