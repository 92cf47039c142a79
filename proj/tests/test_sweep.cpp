#include <doctest.h>

#include <labelbits/errors.hpp>
#include <labelbits/sweep.hpp>
#include <labelbits/triplets.hpp>

#include <cmath>
#include <map>

using namespace labelbits;

namespace {

SweepSpec tiny() {
	SweepSpec s;
	s.n_grid = {3};
	s.k_grid = {3};
	s.d_grid = {5};
	s.reps = 2;
	return s;
}

} // namespace

TEST_CASE("row count matches the grid cardinality") {
	const SweepSpec s = tiny();
	CHECK(s.rowCount() == 4);
	const SweepResult r = runSweep(s);
	CHECK(r.rows.size() == 4);
	CHECK(r.allOk());
	CHECK((r.rows[0].kind == LabelKind::Hard));
	CHECK(r.rows[0].rep == 0);
	CHECK(r.rows[1].rep == 1);
	CHECK((r.rows[2].kind == LabelKind::Soft));
}

TEST_CASE("sweep rows carry closed-form counts") {
	const SweepResult r = runSweep(tiny());
	for (const auto& row : r.rows) {
		if (row.kind == LabelKind::Soft) {
			CHECK(row.constraint_count == 18);
			CHECK(row.ir == doctest::Approx(0.3));
			CHECK(row.c_hat == 3.0);
		} else {
			CHECK(row.constraint_count == 12);
			CHECK(row.ir == doctest::Approx(0.2));
			CHECK(row.c_hat == 1.0);
		}
		CHECK(row.loss == doctest::Approx(-row.rho));
	}
}

TEST_CASE("same sweep configuration twice gives byte-identical CSV for any worker count") {
	SweepSpec s = tiny();
	s.k_grid = {3, 6};
	s.epsilon_grid = {0.0, 0.2};
	const std::string a = sweepToCsv(runSweep(s, 1));
	CHECK(a == sweepToCsv(runSweep(s, 1)));
	CHECK(a == sweepToCsv(runSweep(s, 3)));
	CHECK(a.find("wall_time") == std::string::npos);
	CHECK(sweepToCsv(runSweep(s, 1), true).find("wall_time") != std::string::npos);
}

TEST_CASE("sweep CSV round-trips") {
	const SweepResult r = runSweep(tiny());
	const std::string csv = sweepToCsv(r);
	CHECK(sweepToCsv(sweepFromCsv(csv)) == csv);
}

TEST_CASE("cellSeed is stable across grid changes") {
	CHECK(cellSeed(0, 3, 3, 5, 0) == cellSeed(0, 3, 3, 5, 0));
	CHECK(cellSeed(0, 3, 3, 5, 0) != cellSeed(0, 3, 3, 5, 1));
	CHECK(cellSeed(0, 3, 3, 5, 0) != cellSeed(1, 3, 3, 5, 0));
	SweepSpec small = tiny();
	SweepSpec big = tiny();
	big.n_grid = {3, 5};
	const auto a = runSweep(small);
	const auto b = runSweep(big);
	CHECK(a.rows[0].seed == b.rows[0].seed);
	CHECK(a.rows[0].rho == b.rows[0].rho);
}

TEST_CASE("effectiveKHat clamps to what a cell allows") {
	CHECK(effectiveKHat({LabelKind::Hard, 0}, 5, 4, 3, false) == 1);
	CHECK(effectiveKHat({LabelKind::Soft, 0}, 5, 4, 3, false) == 4);
	CHECK(effectiveKHat({LabelKind::SparseSoft, 10}, 5, 4, 3, false) == 4);
	CHECK(effectiveKHat({LabelKind::SparseSoft, 2}, 5, 4, 3, false) == 2);
	CHECK(effectiveKHat({LabelKind::PcaCoords, 10}, 5, 4, 3, false) == 3);
	CHECK(effectiveKHat({LabelKind::PcaCoords, 10}, 5, 4, 30, true) == 4);
	CHECK(effectiveKHat({LabelKind::PcaCoords, 0}, 2, 2, 30, false) == 4);
}

TEST_CASE("every signal kind evaluates") {
	SweepSpec s = tiny();
	s.reps = 1;
	s.n_grid = {5};
	s.k_grid = {4};
	s.signals = {{LabelKind::Hard}, {LabelKind::Soft}, {LabelKind::Smoothed}, {LabelKind::Typicality},
		{LabelKind::SparseSoft, 2}, {LabelKind::TopClass, 2}, {LabelKind::PcaCoords, 2}};
	const SweepResult r = runSweep(s);
	REQUIRE(r.rows.size() == 7);
	for (const auto& row : r.rows) {
		CHECK(row.ok());
		CHECK(std::isfinite(row.rho));
	}
	CHECK(r.rows[4].c_hat == 2.0);
	CHECK(r.rows[3].c_hat == 2.0);
}

TEST_CASE("noise is applied and recorded") {
	SweepSpec s = tiny();
	s.signals = {{LabelKind::Soft}};
	s.epsilon_grid = {0.0, 1.0};
	const SweepResult r = runSweep(s);
	REQUIRE(r.rows.size() == 4);
	CHECK(r.rows[2].epsilon == 1.0);
	CHECK(r.rows[2].constraint_count == r.rows[0].constraint_count);
}

TEST_CASE("sweep configuration validation and JSON round-trip") {
	SweepSpec s;
	s.signals = {{LabelKind::SparseSoft, 3}, {LabelKind::Smoothed, 0, 0.1}};
	s.epsilon_grid = {0.0, 0.25};
	s.solver.lambda = 0.1;
	s.tradeoff.beta = 0.5;
	const SweepSpec back = sweepSpecFromJson(sweepSpecToJson(s));
	CHECK(sweepSpecToJson(back) == sweepSpecToJson(s));
	CHECK(back.signals == s.signals);

	const SweepSpec named = sweepSpecFromJson(R"({"signals": ["hard", "soft"], "reps": 3})");
	CHECK(named.reps == 3);
	CHECK(named.signals.size() == 2);
	CHECK_THROWS_AS(sweepSpecFromJson(R"({"reps": 0})"), ParameterError);
	CHECK_THROWS_AS(sweepSpecFromJson(R"({"n_grid": [0]})"), ParameterError);
	CHECK_THROWS_AS(sweepSpecFromJson(R"({"k_grid": [1]})"), ParameterError);
	CHECK_THROWS_AS(sweepSpecFromJson(R"({"signals": ["nope"]})"), FormatError);
	CHECK_THROWS_AS(sweepSpecFromJson("{"), FormatError);
}

TEST_CASE("soft labels beat hard labels on a reduced grid") {
	SweepSpec s;
	s.n_grid = {3, 10, 30};
	s.k_grid = {3, 10, 30};
	s.d_grid = {5, 25};
	s.reps = 5;
	const SweepResult r = runSweep(s);
	REQUIRE(r.allOk());
	std::map<std::tuple<int, int, int>, std::pair<double, double>> cells;
	for (const auto& row : r.rows) {
		auto& c = cells[{row.n, row.k, row.d}];
		(row.kind == LabelKind::Soft ? c.second : c.first) += row.rho;
	}
	for (const auto& [key, v] : cells) {
		const auto [n, k, d] = key;
		if (k < n) continue;
		INFO("n=" << n << " k=" << k << " d=" << d);
		CHECK(v.second >= v.first);
	}
}
