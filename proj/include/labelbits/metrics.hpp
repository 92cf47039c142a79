/// @file  metrics.hpp
/// @brief Recovery quality and label statistics.

#pragma once

#include <labelbits/gnmds.hpp>
#include <labelbits/labels.hpp>
#include <labelbits/latentgen.hpp>

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace labelbits {

/// Tie-averaged ranks (1-based).
std::vector<double> averageRanks(const std::vector<double>& values);

double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Spearman between the Gram upper triangle and the ground-truth similarity
/// upper triangle. With `cosine_gram` the Gram is normalized first.
double recoveryScore(const GramMatrix& gram, const SimilarityMatrix& truth,
	bool cosine_gram = false);
double recoveryScore(const Eigen::MatrixXd& gram, const SimilarityMatrix& truth,
	bool cosine_gram = false);

/// Answers "is item j closer to the anchor than item l?" with -1 (yes),
/// +1 (no) or 0 (tie).
class TripletOracle {
public:
	/// Higher similarity means closer.
	static TripletOracle fromSimilarity(SimilarityMatrix similarity);
	/// Smaller Euclidean distance between rows means closer.
	static TripletOracle fromCoordinates(Eigen::MatrixXd coordinates);
	/// Smaller Gram-induced squared distance means closer.
	static TripletOracle fromGram(const Eigen::MatrixXd& gram);

	std::size_t size() const { return size_; }
	int compare(std::size_t anchor, std::size_t j, std::size_t l) const;

private:
	std::size_t size_ = 0;
	std::function<int(std::size_t, std::size_t, std::size_t)> compare_;
};

/// Fraction of unique triplet queries answered differently by the two
/// structures, ignoring queries tied in either. All 3 C(m, 3) queries are
/// used unless `sample_size` is given, in which case queries are drawn
/// uniformly with replacement from `seed`.
double tripletDisagreementRate(const TripletOracle& a, const TripletOracle& b,
	std::optional<std::size_t> sample_size = std::nullopt, std::uint64_t seed = 0);

struct LabelStats {
	double mean_entropy = 0.0;          ///< bits
	double variance_first_order = 0.0;  ///< variance of the row maxima
	double normalized_entropy = 0.0;
	double stochastic_ir = 0.0;
};

LabelStats labelStats(const LabelSet& labels);

struct PcaCurvePoint {
	int k_hat = 0;
	double rho = 0.0;
};

struct PcaCurve {
	std::vector<PcaCurvePoint> points;  ///< strictly increasing k_hat

	void validate() const;
};

struct EffectiveDimensionality {
	int k_hat = 0;
	bool saturated = false;
};

/// First k_hat on the curve reaching rho_target; the last one with
/// `saturated` set when the target is never reached.
EffectiveDimensionality effectiveDimensionality(double rho_target, const PcaCurve& curve);

} // namespace labelbits
