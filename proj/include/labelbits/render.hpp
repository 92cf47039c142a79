/// @file  render.hpp
/// @brief SVG heatmaps and line plots built from sweep results. Every
///        rendered number comes from the CSV emitted alongside the plot.

#pragma once

#include <labelbits/costbenefit.hpp>
#include <labelbits/sweep.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace labelbits {

struct Rendered {
	std::string svg;
	std::string csv;
};

/// Mean of a numeric column per (facet value, n, k).
struct PivotCell {
	std::string facet;
	int n = 0;
	int k = 0;
	double value = 0.0;
	std::size_t count = 0;
};

/// Numeric columns: rho, ir, satisfied_fraction, c_hat, loss,
/// constraint_count. Facets: kind, d, epsilon, k_hat, signal. Rows with a
/// failed status or a non-finite metric are skipped.
std::vector<PivotCell> pivot(const SweepResult& result, std::string_view metric, std::string_view facet);

/// One n x k panel per facet value on a shared linear colour scale; the CSV
/// is `facet,n,k,value,count`.
Rendered renderHeatmap(const SweepResult& result, std::string_view metric, std::string_view facet);

/// Hex colour for position t in [0, 1] of the heatmap scale.
std::string heatColor(double t);

/// One option per (n, k): hard, dense soft, and every sparse / top-class
/// k_hat present, with rho averaged over the remaining grid dimensions.
std::vector<SignalOption> signalOptions(const SweepResult& result, int n, int k);

/// Loss-vs-k_hat curves per (n, k, beta) with hard / soft reference lines
/// and the optimum marked. CSV columns:
/// `n,k,kind,k_hat,rho,c_hat,beta,utility_kind,loss,preferred`.
Rendered renderTradeoff(const SweepResult& result, const std::vector<double>& beta_grid,
	UtilityKind utility);

/// rho-vs-k_hat curves for PCA, sparse and top-class labels per (n, k), with
/// soft / hard reference lines. CSV: `n,k,kind,k_hat,rho,count`.
Rendered renderSparsity(const SweepResult& result);

} // namespace labelbits
