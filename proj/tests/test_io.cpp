#include <doctest.h>

#include "oracles.hpp"

#include <labelbits/errors.hpp>
#include <labelbits/io.hpp>
#include <labelbits/labels.hpp>
#include <labelbits/latentgen.hpp>

#include <json.hpp>

#include <cmath>
#include <string>

using namespace labelbits;

TEST_CASE("formatDouble round-trips") {
	for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 1e-300, 6.02e23}) CHECK(std::stod(formatDouble(v)) == v);
	CHECK(formatDouble(0.1) == "0.1");
	CHECK(formatDouble(3.0) == "3");
}

TEST_CASE("splitCsvLine keeps empty fields") {
	CHECK(splitCsvLine("a,,b") == std::vector<std::string>{"a", "", "b"});
	CHECK(splitCsvLine("x") == std::vector<std::string>{"x"});
	CHECK(splitCsvLine("1,2\r") == std::vector<std::string>{"1", "2"});
}

TEST_CASE("datasetToCsv layout") {
	const LatentDataset data = generateDataset(4, 2, 3, 0.5, 1);
	const std::string csv = datasetToCsv(data);
	CHECK(csv.rfind("role,class,x0,x1,x2\n", 0) == 0);
	CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
	CHECK(csv.find("\ncentroid,1,") != std::string::npos);
}

TEST_CASE("labels round-trip") {
	const LabelSet soft = oracle::randomTieFreeSoft(5, 4, 2);
	const LabelSet back = labelsFromCsv(labelsToCsv(soft));
	CHECK((back.kind == LabelKind::Soft));
	CHECK(back.values == soft.values);

	const LabelSet sparse = sparsifyLabels(soft, 2);
	const LabelSet sparseBack = labelsFromCsv(labelsToCsv(sparse));
	CHECK((sparseBack.kind == LabelKind::SparseSoft));
	REQUIRE(sparseBack.k_hat.has_value());
	CHECK(*sparseBack.k_hat == 2);

	LabelSet top = soft;
	top.kind = LabelKind::TopClass;
	top.k_hat = 2;
	top.retained_columns = {1, 3};
	const LabelSet topBack = labelsFromCsv(labelsToCsv(top));
	CHECK(topBack.retained_columns == std::vector<int>{1, 3});

	CHECK_THROWS_AS(labelsFromCsv("kind,k_hat\nwobbly,\n1,0\n"), FormatError);
	CHECK_THROWS_AS(labelsFromCsv("kind,k_hat\nsoft,\n0.5,0.5\n1\n"), FormatError);
	CHECK_THROWS_AS(labelsFromCsv(""), FormatError);
}

TEST_CASE("constraints round-trip and validate indices") {
	ConstraintSet set = mineFromSoft(oracle::randomTieFreeSoft(3, 3, 4));
	set.flip_rate = 0.1;
	set.source_kind = "soft";
	const ConstraintSet back = constraintsFromCsv(constraintsToCsv(set));
	CHECK(back.constraints == set.constraints);
	CHECK(back.n_points == 3);
	CHECK(back.n_centroids == 3);
	CHECK(back.flip_rate == 0.1);
	CHECK(back.source_kind == "soft");

	CHECK_THROWS_AS(constraintsFromCsv("n,k,source_kind,flip_rate\n2,1,x,0\nanchor,near,far\n0,1,3\n"), ShapeError);
	CHECK_THROWS_AS(constraintsFromCsv("n,k,source_kind,flip_rate\n2,1,x,0\nanchor,near,far\n0,0,1\n"), FormatError);
	CHECK_THROWS_AS(constraintsFromCsv("n,k,source_kind,flip_rate\n2,1,x,0\nanchor,near,far\n0,a,1\n"), FormatError);
}

TEST_CASE("Gram matrix and diagnostics serialization") {
	GramMatrix g;
	g.entries = oracle::gaussian(3, 3, 9);
	g.diagnostics = {5.0, 1.25, 17, 0.75};
	CHECK(matrixFromCsv(gramToCsv(g)) == g.entries);
	const auto j = nlohmann::json::parse(diagnosticsToJson(g.diagnostics));
	CHECK(j.at("final_objective").get<double>() == 1.25);
	CHECK(j.at("iterations").get<int>() == 17);
	CHECK_THROWS_AS(matrixFromCsv("1,2\n3\n"), FormatError);
}
