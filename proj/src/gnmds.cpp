#include <labelbits/gnmds.hpp>
#include <labelbits/errors.hpp>

#include <cmath>
#include <deque>
#include <string>

namespace labelbits {

namespace {


void checkIndices(const ConstraintSet& set) {
	const std::size_t m = set.items();
	for (const auto& t : set.constraints) {
		if (t.anchor >= m || t.near >= m || t.far >= m) {
			throw ShapeError("constraint index out of range for " + std::to_string(m) + " items");
		}
	}
}

double hingeSum(const std::vector<TripletConstraint>& cons, const Eigen::MatrixXd& K, double margin) {
	double total = 0.0;
	for (const auto& t : cons) {
		const double v = margin + K(t.near, t.near) - K(t.far, t.far) -
			2.0 * K(t.anchor, t.near) + 2.0 * K(t.anchor, t.far);
		if (v > 0.0) total += v;
	}
	return total;
}

/// Subgradient of the objective at K, accumulated in constraint order.
Eigen::MatrixXd subgradient(const std::vector<TripletConstraint>& cons, const Eigen::MatrixXd& K,
	double margin, double lambda) {
	Eigen::MatrixXd g = lambda * Eigen::MatrixXd::Identity(K.rows(), K.cols());
	for (const auto& t : cons) {
		const double v = margin + K(t.near, t.near) - K(t.far, t.far) -
			2.0 * K(t.anchor, t.near) + 2.0 * K(t.anchor, t.far);
		if (v <= 0.0) continue;
		g(t.near, t.near) += 1.0;
		g(t.far, t.far) -= 1.0;
		g(t.anchor, t.near) -= 1.0;
		g(t.near, t.anchor) -= 1.0;
		g(t.anchor, t.far) += 1.0;
		g(t.far, t.anchor) += 1.0;
	}
	return g;
}

Eigen::MatrixXd doubleCenter(const Eigen::MatrixXd& K) {
	const Eigen::VectorXd rowMean = K.rowwise().mean();
	const Eigen::RowVectorXd colMean = K.colwise().mean();
	const double grand = K.mean();
	Eigen::MatrixXd out = K;
	out.colwise() -= rowMean;
	out.rowwise() -= colMean;
	out.array() += grand;
	return 0.5 * (out + out.transpose());
}

} // namespace

void SolverConfig::validate() const {
	if (!(margin > 0.0)) throw ParameterError("margin must be > 0");
	if (!(lambda > 0.0)) throw ParameterError("lambda must be > 0");
	if (max_iterations < 1) throw ParameterError("max_iterations must be >= 1");
	if (!(tolerance > 0.0)) throw ParameterError("tolerance must be > 0");
	if (window < 1) throw ParameterError("window must be >= 1");
	if (!(step_growth >= 1.0)) throw ParameterError("step_growth must be >= 1");
}

double gnmdsObjective(const ConstraintSet& constraints, const Eigen::MatrixXd& gram,
	double margin, double lambda) {
	return hingeSum(constraints.constraints, gram, margin) + lambda * gram.trace();
}

double satisfiedFraction(const ConstraintSet& constraints, const Eigen::MatrixXd& gram) {
	if (constraints.constraints.empty()) return 1.0;
	std::size_t ok = 0;
	for (const auto& t : constraints.constraints) {
		const double near = gram(t.near, t.near) - 2.0 * gram(t.anchor, t.near);
		const double far = gram(t.far, t.far) - 2.0 * gram(t.anchor, t.far);
		if (near < far) ++ok;
	}
	return static_cast<double>(ok) / static_cast<double>(constraints.constraints.size());
}

Eigen::MatrixXd projectPsd(const Eigen::MatrixXd& matrix) {
	if (matrix.rows() != matrix.cols()) throw ShapeError("PSD projection needs a square matrix");
	if (!matrix.allFinite()) throw NumericError("PSD projection received non-finite entries");
	const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
	if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
	const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
	Eigen::MatrixXd out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
	return 0.5 * (out + out.transpose());
}

GramMatrix solve(const ConstraintSet& constraints, const SolverConfig& config) {
	config.validate();
	if (constraints.constraints.empty()) throw InsufficientDataError("GNMDS needs at least one constraint");
	checkIndices(constraints);

	const auto m = static_cast<Eigen::Index>(constraints.items());
	const auto& cons = constraints.constraints;
	const double margin = config.margin;
	const double lambda = config.lambda;

	Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
	double objective = gnmdsObjective(constraints, K, margin, lambda);
	const double initial = objective;
	double step = config.step_size > 0.0 ? config.step_size : 1.0 / static_cast<double>(cons.size());
	const double minStep = step * 1e-12;

	Eigen::MatrixXd best = K;
	double bestObjective = objective;
	std::deque<double> history{objective};
	int iter = 0;
	while (iter < config.max_iterations) {
		++iter;
		const Eigen::MatrixXd grad = subgradient(cons, K, margin, lambda);
		K = doubleCenter(projectPsd(K - step * grad));
		const double next = gnmdsObjective(constraints, K, margin, lambda);
		if (next > objective) step *= 0.5;
		else step *= config.step_growth;
		objective = next;
		if (objective < bestObjective) {
			bestObjective = objective;
			best = K;
		}
		history.push_back(bestObjective);
		if (static_cast<int>(history.size()) > config.window) {
			const double past = history.front();
			history.pop_front();
			const double scale = std::max(std::abs(past), 1e-300);
			if ((past - bestObjective) / scale < config.tolerance) break;
		}
		if (step < minStep) break;
	}
	K = std::move(best);
	objective = bestObjective;

	GramMatrix out;
	out.entries = std::move(K);
	out.diagnostics.initial_objective = initial;
	out.diagnostics.final_objective = objective;
	out.diagnostics.iterations = iter;
	out.diagnostics.satisfied_fraction = satisfiedFraction(constraints, out.entries);
	return out;
}

Eigen::MatrixXd extractEmbedding(const Eigen::MatrixXd& gram, int h) {
	if (gram.rows() != gram.cols()) throw ShapeError("Gram matrix must be square");
	if (h < 1 || h > gram.rows()) throw ParameterError("embedding rank must lie in [1, m]");
	const Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
	if (eig.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
	const Eigen::Index m = gram.rows();
	Eigen::MatrixXd coords(m, h);
	for (int c = 0; c < h; ++c) {
		const Eigen::Index col = m - 1 - c;
		coords.col(c) = std::sqrt(std::max(0.0, eig.eigenvalues()(col))) * eig.eigenvectors().col(col);
	}
	return coords;
}

Eigen::MatrixXd extractEmbedding(const GramMatrix& gram, int h) {
	return extractEmbedding(gram.entries, h);
}

} // namespace labelbits
