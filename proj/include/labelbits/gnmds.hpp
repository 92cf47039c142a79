/// @file  gnmds.hpp
/// @brief Generalized non-metric MDS: a PSD Gram matrix fitted to triplet
///        constraints by projected subgradient descent.

#pragma once

#include <labelbits/triplets.hpp>

#include <Eigen/Dense>
#include <cstdint>

namespace labelbits {

struct SolverConfig {
	double margin = 1.0;
	double lambda = 0.05;          ///< trace regularization weight
	double step_size = 0.0;        ///< <= 0 selects 1 / |constraints|
	int max_iterations = 2000;
	double tolerance = 1e-6;       ///< relative decrease over `window` iterations
	int window = 10;
	double step_growth = 1.05;     ///< step multiplier after an accepted step
	std::uint64_t seed = 0;        ///< reserved for random restarts

	void validate() const;
};

struct SolverDiagnostics {
	double initial_objective = 0.0;
	double final_objective = 0.0;
	int iterations = 0;
	double satisfied_fraction = 0.0;
};

struct GramMatrix {
	Eigen::MatrixXd entries;
	SolverDiagnostics diagnostics;

	std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Minimizes sum_t max(0, margin + D2(a, near) - D2(a, far)) + lambda tr(K)
/// over centered PSD matrices K, starting from K = 0. The step size halves
/// whenever the objective rises and grows by `step_growth` otherwise; the
/// best iterate seen is returned.
GramMatrix solve(const ConstraintSet& constraints, const SolverConfig& config = {});

/// GNMDS objective at K.
double gnmdsObjective(const ConstraintSet& constraints, const Eigen::MatrixXd& gram,
	double margin, double lambda);

/// Share of constraints with D2(a, near) < D2(a, far) under `gram`.
double satisfiedFraction(const ConstraintSet& constraints, const Eigen::MatrixXd& gram);

/// Frobenius-nearest PSD matrix: symmetrize, clip negative eigenvalues.
Eigen::MatrixXd projectPsd(const Eigen::MatrixXd& matrix);

/// Rows are item coordinates in R^h built from the top-h eigenpairs.
Eigen::MatrixXd extractEmbedding(const GramMatrix& gram, int h);
Eigen::MatrixXd extractEmbedding(const Eigen::MatrixXd& gram, int h);

} // namespace labelbits
