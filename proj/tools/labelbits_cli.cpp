// labelbits command-line harness: sweeps, closed-form analysis, embedding
// of constraint files and cost-benefit tables.

#include <labelbits/errors.hpp>
#include <labelbits/gnmds.hpp>
#include <labelbits/io.hpp>
#include <labelbits/render.hpp>
#include <labelbits/sweep.hpp>
#include <labelbits/triplets.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace labelbits;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitCellFailure = 1;

struct Common {
	std::string config;
	std::string out = ".";
	unsigned workers = 1;
	std::optional<std::uint64_t> seed;
};

void addCommon(CLI::App* cmd, Common& c) {
	cmd->add_option("--config", c.config, "JSON sweep configuration");
	cmd->add_option("--out", c.out, "output directory");
	cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
	cmd->add_option("--seed", c.seed, "base seed (overrides the config)");
}

SweepSpec loadSpec(const Common& c) {
	SweepSpec spec = c.config.empty() ? SweepSpec{} : sweepSpecFromJson(readFile(c.config));
	if (c.seed) spec.seed = *c.seed;
	spec.validate();
	return spec;
}

fs::path prepareOut(const std::string& out) {
	fs::path dir(out);
	fs::create_directories(dir);
	return dir;
}

void writeManifest(const fs::path& dir, const std::string& command, const SweepSpec& spec,
	double seconds, const SweepResult* result) {
	nlohmann::ordered_json m;
	m["tool"] = "labelbits";
	m["version"] = kVersion;
	m["command"] = command;
	m["spec"] = nlohmann::ordered_json::parse(sweepSpecToJson(spec));
	m["wall_time_seconds"] = seconds;
	if (result) {
		std::size_t failed = 0;
		for (const auto& r : result->rows) failed += r.ok() ? 0 : 1;
		m["rows"] = result->rows.size();
		m["failed_rows"] = failed;
	}
	writeFile(dir / "run_manifest.json", m.dump(2) + "\n");
}

double secondsSince(std::chrono::steady_clock::time_point start) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void writeHeatmap(const fs::path& dir, const SweepResult& result, const std::string& metric, const std::string& facet) {
	const Rendered r = renderHeatmap(result, metric, facet);
	writeFile(dir / ("heatmap_" + metric + "_" + facet + ".svg"), r.svg);
	writeFile(dir / ("heatmap_" + metric + "_" + facet + ".csv"), r.csv);
}

std::vector<SignalSpec> sparsitySignals(const std::vector<int>& k_hats) {
	std::vector<SignalSpec> signals{{LabelKind::Hard}, {LabelKind::Soft}};
	for (LabelKind kind : {LabelKind::PcaCoords, LabelKind::SparseSoft, LabelKind::TopClass})
		for (int kh : k_hats) signals.push_back({kind, kh});
	return signals;
}

std::vector<double> betaGrid(const std::vector<double>& explicitGrid, double maxBeta, int count) {
	if (!explicitGrid.empty()) return explicitGrid;
	std::vector<double> grid;
	for (int i = 0; i < count; ++i) grid.push_back(count == 1 ? maxBeta : maxBeta * i / (count - 1));
	return grid;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Information content of supervision signals for latent recovery"};
	app.require_subcommand(1);
	app.set_version_flag("--version", kVersion);

	Common common;
	std::string metric = "rho";
	std::string facet = "kind";
	std::string constraintsPath;
	std::string sweepPath;
	std::vector<double> betas;
	double betaMax = 0.2;
	int betaCount = 5;
	std::string utilityName = "linear";
	std::vector<int> kHats{1, 2, 5, 10};
	bool timing = false;

	auto* defaults = app.add_subcommand("defaults", "print the default sweep configuration");

	auto* simulate = app.add_subcommand("simulate", "run a sweep and write sweep.csv plus a heatmap");
	addCommon(simulate, common);
	simulate->add_option("--metric", metric, "heatmap metric column");
	simulate->add_option("--facet", facet, "heatmap facet column");
	simulate->add_flag("--timing", timing, "append per-row wall time to sweep.csv");

	auto* analyze = app.add_subcommand("analyze", "closed-form information ratio heatmaps (no solver)");
	addCommon(analyze, common);

	auto* embed = app.add_subcommand("embed", "fit GNMDS to a constraint CSV");
	addCommon(embed, common);
	embed->add_option("--constraints", constraintsPath, "constraint CSV")->required();

	auto* tradeoff = app.add_subcommand("tradeoff", "loss curves over a beta grid");
	addCommon(tradeoff, common);
	tradeoff->add_option("--sweep", sweepPath, "existing sweep.csv (otherwise a sparsity sweep is run)");
	tradeoff->add_option("--betas", betas, "explicit beta values");
	tradeoff->add_option("--beta-max", betaMax, "largest beta of an evenly spaced grid");
	tradeoff->add_option("--beta-count", betaCount, "number of beta values")->check(CLI::PositiveNumber);
	tradeoff->add_option("--utility", utilityName, "linear or sigmoid");
	tradeoff->add_option("--k-hats", kHats, "k_hat values for the sparsity sweep");

	auto* sparsity = app.add_subcommand("sparsity", "PCA / sparse / top-class curves over k_hat");
	addCommon(sparsity, common);
	sparsity->add_option("--k-hats", kHats, "k_hat values");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : kExitUsage;
	}

	try {
		const auto start = std::chrono::steady_clock::now();
		if (defaults->parsed()) {
			std::cout << sweepSpecToJson(SweepSpec{});
			return 0;
		}
		if (simulate->parsed()) {
			const SweepSpec spec = loadSpec(common);
			const fs::path dir = prepareOut(common.out);
			const SweepResult result = runSweep(spec, common.workers);
			writeFile(dir / "sweep.csv", sweepToCsv(result, timing));
			writeHeatmap(dir, result, metric, facet);
			writeManifest(dir, "simulate", spec, secondsSince(start), &result);
			return result.allOk() ? 0 : kExitCellFailure;
		}
		if (analyze->parsed()) {
			const SweepSpec spec = loadSpec(common);
			const fs::path dir = prepareOut(common.out);
			SweepResult closed;
			std::string csv = "n,k,t_hard,t_soft,ir_hard,ir_soft\n";
			for (int n : spec.n_grid) {
				for (int k : spec.k_grid) {
					const Rational th = countHard(n, k);
					const std::int64_t ts = countSoft(n, k);
					const double irh = informationRatio(th.value(), static_cast<std::size_t>(n), static_cast<std::size_t>(k));
					const double irs = informationRatio(static_cast<double>(ts), static_cast<std::size_t>(n), static_cast<std::size_t>(k));
					csv += std::to_string(n) + ',' + std::to_string(k) + ',' + formatDouble(th.value()) + ',' +
						std::to_string(ts) + ',' + formatDouble(irh) + ',' + formatDouble(irs) + '\n';
					SweepRow h;
					h.n = n;
					h.k = k;
					h.kind = LabelKind::Hard;
					h.ir = irh;
					SweepRow s = h;
					s.kind = LabelKind::Soft;
					s.ir = irs;
					closed.rows.push_back(h);
					closed.rows.push_back(s);
				}
			}
			writeFile(dir / "analysis.csv", csv);
			writeHeatmap(dir, closed, "ir", "kind");
			writeManifest(dir, "analyze", spec, secondsSince(start), nullptr);
			return 0;
		}
		if (embed->parsed()) {
			const SweepSpec spec = loadSpec(common);
			const fs::path dir = prepareOut(common.out);
			const ConstraintSet set = constraintsFromCsv(readFile(constraintsPath));
			const GramMatrix gram = solve(set, spec.solver);
			writeFile(dir / "gram.csv", gramToCsv(gram));
			writeFile(dir / "gram.json", diagnosticsToJson(gram.diagnostics));
			writeManifest(dir, "embed", spec, secondsSince(start), nullptr);
			return 0;
		}
		if (tradeoff->parsed() || sparsity->parsed()) {
			SweepSpec spec = loadSpec(common);
			const fs::path dir = prepareOut(common.out);
			SweepResult result;
			if (!sweepPath.empty()) {
				result = sweepFromCsv(readFile(sweepPath));
			} else {
				spec.signals = sparsitySignals(kHats);
				result = runSweep(spec, common.workers);
				writeFile(dir / "sweep.csv", sweepToCsv(result));
			}
			if (sparsity->parsed()) {
				const Rendered r = renderSparsity(result);
				writeFile(dir / "sparsity.svg", r.svg);
				writeFile(dir / "sparsity.csv", r.csv);
				writeHeatmap(dir, result, "rho", "signal");
			} else {
				const Rendered r = renderTradeoff(result, betaGrid(betas, betaMax, betaCount),
					utilityKindFromString(utilityName));
				writeFile(dir / "tradeoff.svg", r.svg);
				writeFile(dir / "tradeoff.csv", r.csv);
			}
			writeManifest(dir, tradeoff->parsed() ? "tradeoff" : "sparsity", spec, secondsSince(start), &result);
			return result.allOk() ? 0 : kExitCellFailure;
		}
	} catch (const FormatError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const UsageError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const ParameterError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const ShapeError& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitCellFailure;
	}
	return 0;
}
