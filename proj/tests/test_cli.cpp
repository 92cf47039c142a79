#include <doctest.h>

#include <labelbits/io.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
	const std::string cmd = std::string(LABELBITS_CLI) + " " + args + " >/dev/null 2>&1";
	const int status = std::system(cmd.c_str());
	return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
	const fs::path dir = fs::temp_directory_path() / ("labelbits_cli_" + name);
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

} // namespace

TEST_CASE("defaults prints a loadable configuration") {
	const fs::path dir = scratch("defaults");
	const std::string cmd = std::string(LABELBITS_CLI) + " defaults > " + (dir / "d.json").string();
	REQUIRE(std::system(cmd.c_str()) == 0);
	const auto j = nlohmann::json::parse(labelbits::readFile(dir / "d.json"));
	CHECK(j.at("n_grid").size() == 5);
}

TEST_CASE("simulate writes the sweep, a heatmap and a manifest") {
	const fs::path dir = scratch("simulate");
	labelbits::writeFile(dir / "spec.json", R"({"n_grid": [3], "k_grid": [3, 5], "d_grid": [5], "reps": 1})");
	REQUIRE(run("simulate --config " + (dir / "spec.json").string() + " --out " + (dir / "out").string()) == 0);
	CHECK(fs::exists(dir / "out" / "sweep.csv"));
	CHECK(fs::exists(dir / "out" / "heatmap_rho_kind.svg"));
	CHECK(fs::exists(dir / "out" / "heatmap_rho_kind.csv"));
	CHECK(fs::exists(dir / "out" / "run_manifest.json"));
	const std::string csv = labelbits::readFile(dir / "out" / "sweep.csv");
	CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("analyze needs no solver") {
	const fs::path dir = scratch("analyze");
	REQUIRE(run("analyze --out " + dir.string()) == 0);
	const std::string csv = labelbits::readFile(dir / "analysis.csv");
	CHECK(csv.find("3,3,") != std::string::npos);
}

TEST_CASE("embed fits a constraint file") {
	const fs::path dir = scratch("embed");
	labelbits::writeFile(dir / "c.csv", "n,k,source_kind,flip_rate\n3,0,manual,0\nanchor,near,far\n0,1,2\n");
	REQUIRE(run("embed --constraints " + (dir / "c.csv").string() + " --out " + dir.string()) == 0);
	const auto gram = labelbits::matrixFromCsv(labelbits::readFile(dir / "gram.csv"));
	CHECK(gram.rows() == 3);
	const auto diag = nlohmann::json::parse(labelbits::readFile(dir / "gram.json"));
	CHECK(diag.at("satisfied_fraction").get<double>() == 1.0);
}

TEST_CASE("usage and format errors exit with code 2") {
	const fs::path dir = scratch("errors");
	CHECK(run("frobnicate") == 2);
	CHECK(run("embed") == 2);
	labelbits::writeFile(dir / "bad.csv", "garbage\n");
	CHECK(run("embed --constraints " + (dir / "bad.csv").string() + " --out " + dir.string()) == 2);
	labelbits::writeFile(dir / "bad.json", R"({"reps": -1})");
	CHECK(run("simulate --config " + (dir / "bad.json").string() + " --out " + dir.string()) == 2);
	labelbits::writeFile(dir / "tiny.json", R"({"n_grid": [3], "k_grid": [3], "d_grid": [5]})");
	CHECK(run("simulate --metric colour --out " + dir.string() + " --config " + (dir / "tiny.json").string()) == 2);
}
