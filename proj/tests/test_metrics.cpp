#include <doctest.h>

#include "oracles.hpp"

#include <labelbits/errors.hpp>
#include <labelbits/labels.hpp>
#include <labelbits/metrics.hpp>

#include <cmath>

using namespace labelbits;

TEST_CASE("spearman examples") {
	CHECK(spearman({1, 2, 3}, {10, 20, 30}) == doctest::Approx(1.0));
	CHECK(spearman({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
	// Average ranks [1, 2.5, 2.5, 4] against [1, 2, 3, 4]:
	// covariance sum 4.5, variances 4.5 and 5, so 4.5 / sqrt(22.5).
	CHECK(spearman({1, 2, 2, 4}, {1, 2, 3, 4}) == doctest::Approx(0.9486832980505138).epsilon(1e-12));
	CHECK(averageRanks({1, 2, 2, 4}) == std::vector<double>{1, 2.5, 2.5, 4});
	CHECK(averageRanks({3, 1, 3, 3}) == std::vector<double>{3, 1, 3, 3});
}

TEST_CASE("spearman errors") {
	CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), DegenerateInputError);
	CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), DegenerateInputError);
	CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 2}), ShapeError);
}

TEST_CASE("pearson") {
	CHECK(pearson({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
	CHECK(pearson({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5));
}

TEST_CASE("recoveryScore") {
	Eigen::MatrixXd x = oracle::gaussian(6, 3, 2);
	for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i).normalize();
	const SimilarityMatrix truth = similarityMatrix(x, true);
	const Eigen::MatrixXd gram = x * x.transpose();
	CHECK(recoveryScore(gram, truth) == doctest::Approx(1.0));
	CHECK(recoveryScore(Eigen::MatrixXd(-gram), truth) == doctest::Approx(-1.0));
	CHECK(recoveryScore(Eigen::MatrixXd(3.0 * gram), truth, true) == doctest::Approx(1.0));
	CHECK_THROWS_AS(recoveryScore(Eigen::MatrixXd(gram.topLeftCorner(5, 5)), truth), ShapeError);

	SUBCASE("scoring a Gram over points and centroids on the leading block") {
		CHECK(recoveryScore(Eigen::MatrixXd(gram.topLeftCorner(4, 4)), truth.leading(4)) == doctest::Approx(1.0));
	}
}

TEST_CASE("tripletDisagreementRate") {
	const Eigen::MatrixXd x = oracle::gaussian(8, 3, 6);
	const SimilarityMatrix s = similarityMatrix(x, false);
	const auto a = TripletOracle::fromSimilarity(s);
	CHECK(tripletDisagreementRate(a, a) == 0.0);

	std::vector<double> neg(s.values());
	for (double& v : neg) v = -v;
	const auto b = TripletOracle::fromSimilarity(SimilarityMatrix(8, neg, false));
	CHECK(tripletDisagreementRate(a, b) == 1.0);

	SUBCASE("independent structures disagree about half the time") {
		const Eigen::MatrixXd u = oracle::gaussian(435, 2, 100);
		std::vector<double> su(435), sv(435);
		for (Eigen::Index i = 0; i < 435; ++i) {
			su[static_cast<std::size_t>(i)] = u(i, 0);
			sv[static_cast<std::size_t>(i)] = u(i, 1);
		}
		const auto p = TripletOracle::fromSimilarity(SimilarityMatrix(30, su, false));
		const auto q = TripletOracle::fromSimilarity(SimilarityMatrix(30, sv, false));
		const double rate = tripletDisagreementRate(p, q);
		CHECK(rate >= 0.45);
		CHECK(rate <= 0.55);
		const double sampled = tripletDisagreementRate(p, q, 5000, 3);
		CHECK(sampled >= 0.45);
		CHECK(sampled <= 0.55);
		CHECK(tripletDisagreementRate(p, q, 5000, 3) == sampled);
	}

	SUBCASE("a Gram oracle agrees with its own coordinates") {
		const auto g = TripletOracle::fromGram(x * x.transpose());
		CHECK(tripletDisagreementRate(g, TripletOracle::fromCoordinates(x)) == doctest::Approx(0.0).epsilon(1e-12));
	}

	const auto small = TripletOracle::fromCoordinates(oracle::gaussian(2, 2, 1));
	CHECK_THROWS_AS(tripletDisagreementRate(small, small), InsufficientDataError);
	CHECK_THROWS_AS(tripletDisagreementRate(a, TripletOracle::fromCoordinates(oracle::gaussian(5, 2, 1))), ShapeError);
}

TEST_CASE("labelStats") {
	const LabelStats hot = labelStats(oracle::oneHot({0, 1, 2, 1}, 3));
	CHECK(hot.mean_entropy == doctest::Approx(0.0));
	CHECK(hot.stochastic_ir == doctest::Approx(1.0));
	CHECK(hot.variance_first_order == doctest::Approx(0.0));

	LabelSet uniform;
	uniform.kind = LabelKind::Soft;
	uniform.values = Eigen::MatrixXd::Constant(5, 4, 0.25);
	const LabelStats u = labelStats(uniform);
	CHECK(u.mean_entropy == doctest::Approx(2.0));
	CHECK(u.normalized_entropy == doctest::Approx(1.0));
	CHECK(u.stochastic_ir == doctest::Approx(0.0));
	CHECK(u.variance_first_order == doctest::Approx(0.0));

	LabelSet mixed;
	mixed.kind = LabelKind::Soft;
	mixed.values.resize(2, 2);
	mixed.values << 1.0, 0.0, 0.5, 0.5;
	const LabelStats m = labelStats(mixed);
	CHECK(m.mean_entropy == doctest::Approx(0.5));
	CHECK(m.variance_first_order == doctest::Approx(0.0625));

	LabelSet bad;
	bad.kind = LabelKind::Soft;
	bad.values = Eigen::MatrixXd::Constant(2, 2, 0.7);
	CHECK_THROWS_AS(labelStats(bad), KindError);
	bad.kind = LabelKind::PcaCoords;
	CHECK_THROWS_AS(labelStats(bad), KindError);
}

TEST_CASE("effectiveDimensionality") {
	PcaCurve curve{{{1, 0.3}, {2, 0.6}, {3, 0.9}}};
	const auto two = effectiveDimensionality(0.55, curve);
	CHECK(two.k_hat == 2);
	CHECK_FALSE(two.saturated);
	CHECK(effectiveDimensionality(0.0, curve).k_hat == 1);
	const auto sat = effectiveDimensionality(0.95, curve);
	CHECK(sat.k_hat == 3);
	CHECK(sat.saturated);

	PcaCurve bumpy{{{1, 0.5}, {2, 0.4}, {3, 0.7}}};
	CHECK(effectiveDimensionality(0.45, bumpy).k_hat == 1);
	CHECK(effectiveDimensionality(0.6, bumpy).k_hat == 3);

	CHECK_THROWS_AS(effectiveDimensionality(0.5, PcaCurve{}), InsufficientDataError);
	PcaCurve unordered{{{2, 0.1}, {1, 0.2}}};
	CHECK_THROWS_AS(effectiveDimensionality(0.5, unordered), ParameterError);
}
