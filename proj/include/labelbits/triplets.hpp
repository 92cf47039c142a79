/// @file  triplets.hpp
/// @brief Triplet constraint mining, closed-form counts and the bit-flip
///        noise channel.

#pragma once

#include <labelbits/labels.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace labelbits {

/// Asserts dist(anchor, near) < dist(anchor, far) in the learned embedding.
struct TripletConstraint {
	std::uint32_t anchor = 0;
	std::uint32_t near = 0;
	std::uint32_t far = 0;

	auto operator<=>(const TripletConstraint&) const = default;
};

struct ConstraintSet {
	std::size_t n_points = 0;
	std::size_t n_centroids = 0;
	std::vector<TripletConstraint> constraints;
	std::string source_kind = "exhaustive";
	double flip_rate = 0.0;

	std::size_t items() const { return n_points + n_centroids; }
	std::size_t size() const { return constraints.size(); }
};

/// Exact rational number, used for the closed-form counts.
struct Rational {
	std::int64_t num = 0;
	std::int64_t den = 1;

	double value() const { return static_cast<double>(num) / static_cast<double>(den); }
	bool integral() const { return den == 1; }
	bool operator==(const Rational&) const = default;
};

/// Mines centroid-anchored and point-anchored constraints from hard labels.
ConstraintSet mineFromHard(const LabelSet& labels);

/// Mines both constraint types from any soft variant using strict
/// comparisons; tied entries yield nothing.
ConstraintSet mineFromSoft(const LabelSet& labels);

/// Answers every unique query among the encoded items by Euclidean distance.
/// `n_points` splits the rows into points and centroids.
ConstraintSet mineFromCoordinates(const LabelSet& labels, std::size_t n_points);

/// Dispatches on labels.kind.
ConstraintSet mine(const LabelSet& labels, std::size_t n_points);

/// n(k-1) + n^2 (1 - 1/k), reduced.
Rational countHard(std::int64_t n, std::int64_t k);

/// k n (k + n - 2) / 2.
std::int64_t countSoft(std::int64_t n, std::int64_t k);

/// 3 * C(m, 3): the number of unique triplet queries over m items.
double totalQueries(std::size_t items);

/// constraint_count / (3 C(n+k, 3)).
double informationRatio(double constraint_count, std::size_t n, std::size_t k);

/// Swaps near and far of each constraint independently with probability
/// epsilon.
ConstraintSet applyNoise(const ConstraintSet& set, double epsilon, std::uint64_t seed);

/// Fraction of constraints violated by the given item coordinates (rows in
/// combined index order). Ties count as violations.
double inconsistencyRate(const ConstraintSet& set, const Eigen::MatrixXd& items);

} // namespace labelbits
