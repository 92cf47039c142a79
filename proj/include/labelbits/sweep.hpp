/// @file  sweep.hpp
/// @brief Seeded grid sweeps over (n, k, d, signal, epsilon, rep) cells.

#pragma once

#include <labelbits/costbenefit.hpp>
#include <labelbits/gnmds.hpp>
#include <labelbits/labels.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace labelbits {

/// A supervision signal to evaluate. k_hat = 0 means "all components";
/// k_hat larger than a cell allows is clamped to the cell's maximum.
struct SignalSpec {
	LabelKind kind = LabelKind::Soft;
	int k_hat = 0;
	double smoothing = 0.05;  ///< Smoothed only

	bool operator==(const SignalSpec&) const = default;
};

struct SweepSpec {
	std::vector<int> n_grid{3, 5, 10, 20, 40};
	std::vector<int> k_grid{3, 5, 10, 20, 40};
	std::vector<int> d_grid{5, 25, 125};
	std::vector<SignalSpec> signals{{LabelKind::Hard}, {LabelKind::Soft}};
	std::vector<double> epsilon_grid{0.0};
	int reps = 1;
	double sigma = 0.5;
	std::uint64_t seed = 0;
	SolverConfig solver;
	TradeoffConfig tradeoff;
	bool cosine_gram = false;     ///< normalize the Gram before scoring
	bool pca_on_labels = false;   ///< PCA over soft-label rows instead of latents
	bool renormalize_sparse = false;
	int mi_bins = 8;

	void validate() const;
	std::size_t rowCount() const;
};

struct SweepRow {
	int n = 0;
	int k = 0;
	int d = 0;
	LabelKind kind = LabelKind::Hard;
	int k_hat = 0;
	double epsilon = 0.0;
	int rep = 0;
	std::uint64_t seed = 0;
	std::size_t constraint_count = 0;
	double ir = 0.0;
	double rho = 0.0;
	double satisfied_fraction = 0.0;
	double c_hat = 0.0;
	double loss = 0.0;
	double wall_time = 0.0;  ///< seconds; excluded from the deterministic CSV
	std::string status = "ok";

	bool ok() const { return status == "ok"; }
};

struct SweepResult {
	std::vector<SweepRow> rows;

	bool allOk() const;
};

/// Stable 64-bit mix of the base seed with the cell coordinates.
std::uint64_t cellSeed(std::uint64_t base, int n, int k, int d, int rep);

/// Effective k_hat of a signal in a cell.
int effectiveKHat(const SignalSpec& signal, int n, int k, int d, bool pca_on_labels);

/// Evaluates one row: dataset, labels, mining, noise, GNMDS, scoring.
SweepRow evaluateCell(const SweepSpec& spec, int n, int k, int d,
	const SignalSpec& signal, double epsilon, int rep);

/// Rows are ordered n, k, d, signal, epsilon, rep regardless of `workers`.
SweepResult runSweep(const SweepSpec& spec, unsigned workers = 1);

/// Sweep CSV. Wall time is appended only when `with_timing` is set, so the
/// default output is byte-identical across runs.
std::string sweepToCsv(const SweepResult& result, bool with_timing = false);
SweepResult sweepFromCsv(std::string_view text);

std::string sweepSpecToJson(const SweepSpec& spec);
SweepSpec sweepSpecFromJson(std::string_view text);

std::string toString(const SignalSpec& signal);

} // namespace labelbits
