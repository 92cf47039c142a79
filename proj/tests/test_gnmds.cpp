#include <doctest.h>

#include "oracles.hpp"

#include <labelbits/errors.hpp>
#include <labelbits/gnmds.hpp>
#include <labelbits/metrics.hpp>

#include <cmath>
#include <limits>

using namespace labelbits;

namespace {

double d2(const Eigen::MatrixXd& k, int i, int j) { return k(i, i) + k(j, j) - 2.0 * k(i, j); }


} // namespace

TEST_CASE("a single satisfiable constraint is satisfied") {
	ConstraintSet set;
	set.n_points = 3;
	set.constraints = {{0, 1, 2}};
	const GramMatrix g = solve(set);
	CHECK(d2(g.entries, 0, 1) < d2(g.entries, 0, 2));
	CHECK(g.diagnostics.satisfied_fraction == 1.0);
	CHECK(g.diagnostics.final_objective <= g.diagnostics.initial_objective);
}

TEST_CASE("a contradictory pair keeps one hinge active") {
	ConstraintSet set;
	set.n_points = 3;
	set.constraints = {{0, 1, 2}, {0, 2, 1}};
	const GramMatrix g = solve(set);
	CHECK(g.diagnostics.final_objective >= 1.0);
	CHECK(g.diagnostics.iterations > 0);
}

TEST_CASE("five items in general position are embedded consistently") {
	const Eigen::MatrixXd x = oracle::gaussian(5, 3, 4);
	const GramMatrix g = solve(oracle::exhaustiveQueries(x));
	CHECK(g.diagnostics.satisfied_fraction >= 0.95);
	CHECK(oracle::minEigenvalue(g.entries) >= -1e-9);
	CHECK((g.entries - g.entries.transpose()).norm() < 1e-12);
	CHECK(g.entries.rowwise().sum().norm() < 1e-8);
}

TEST_CASE("solve is deterministic") {
	const ConstraintSet set = oracle::exhaustiveQueries(oracle::gaussian(6, 3, 8));
	const GramMatrix a = solve(set);
	const GramMatrix b = solve(set);
	CHECK(a.entries == b.entries);
	CHECK(a.diagnostics.iterations == b.diagnostics.iterations);
}

TEST_CASE("solve input validation") {
	ConstraintSet empty;
	empty.n_points = 3;
	CHECK_THROWS_AS(solve(empty), InsufficientDataError);

	ConstraintSet bad;
	bad.n_points = 3;
	bad.constraints = {{0, 1, 5}};
	CHECK_THROWS_AS(solve(bad), ShapeError);

	ConstraintSet ok;
	ok.n_points = 3;
	ok.constraints = {{0, 1, 2}};
	SolverConfig cfg;
	cfg.lambda = -1.0;
	CHECK_THROWS_AS(solve(ok, cfg), ParameterError);
	cfg = {};
	cfg.max_iterations = 0;
	CHECK_THROWS_AS(solve(ok, cfg), ParameterError);
}

TEST_CASE("gnmdsObjective and satisfiedFraction at the origin") {
	ConstraintSet set;
	set.n_points = 3;
	set.constraints = {{0, 1, 2}, {1, 0, 2}};
	const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
	CHECK(gnmdsObjective(set, zero, 1.0, 0.05) == 2.0);
	CHECK(satisfiedFraction(set, zero) == 0.0);
	const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(3, 3);
	CHECK(gnmdsObjective(set, eye, 1.0, 0.5) == doctest::Approx(2.0 + 1.5));
}

TEST_CASE("projectPsd") {
	CHECK(projectPsd(Eigen::MatrixXd::Identity(4, 4)).isApprox(Eigen::MatrixXd::Identity(4, 4)));

	Eigen::MatrixXd m(2, 2);
	m << 1, 0, 0, -1;
	Eigen::MatrixXd expected(2, 2);
	expected << 1, 0, 0, 0;
	CHECK((projectPsd(m) - expected).norm() < 1e-12);

	const Eigen::MatrixXd r = oracle::gaussian(10, 10, 31);
	const Eigen::MatrixXd sym = 0.5 * (r + r.transpose());
	CHECK(oracle::minEigenvalue(projectPsd(sym)) >= -1e-9);
	const Eigen::MatrixXd psd = r * r.transpose();
	CHECK((projectPsd(psd) - psd).norm() < 1e-9 * psd.norm());

	Eigen::MatrixXd nan = Eigen::MatrixXd::Identity(2, 2);
	nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
	CHECK_THROWS_AS(projectPsd(nan), NumericError);
	CHECK_THROWS_AS(projectPsd(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST_CASE("extractEmbedding factorizes the Gram matrix") {
	const Eigen::MatrixXd f = oracle::gaussian(6, 2, 12);
	const Eigen::MatrixXd rank2 = f * f.transpose();
	const Eigen::MatrixXd e2 = extractEmbedding(rank2, 2);
	CHECK(e2.cols() == 2);
	CHECK(((e2 * e2.transpose()) - rank2).cwiseAbs().maxCoeff() < 1e-8);

	const Eigen::MatrixXd g = oracle::gaussian(5, 5, 13);
	const Eigen::MatrixXd full = g * g.transpose();
	const Eigen::MatrixXd e5 = extractEmbedding(full, 5);
	CHECK(((e5 * e5.transpose()) - full).cwiseAbs().maxCoeff() < 1e-8);

	CHECK(extractEmbedding(Eigen::MatrixXd::Zero(4, 4), 2).isZero());
	CHECK_THROWS_AS(extractEmbedding(full, 0), ParameterError);
	CHECK_THROWS_AS(extractEmbedding(full, 6), ParameterError);
}

TEST_CASE("solver output ranks ten items like their inner products") {
	const Eigen::MatrixXd raw = oracle::gaussian(10, 3, 1);
	const Eigen::MatrixXd x = raw.rowwise() - raw.colwise().mean();
	const GramMatrix g = solve(oracle::exhaustiveQueries(x));
	CHECK(recoveryScore(g, similarityMatrix(x, false)) >= 0.9);
}
