#include <labelbits/labels.hpp>
#include <labelbits/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace labelbits {

namespace {

constexpr std::pair<LabelKind, std::string_view> kKindNames[] = {
	{LabelKind::Hard, "hard"},
	{LabelKind::Soft, "soft"},
	{LabelKind::Smoothed, "smoothed"},
	{LabelKind::Typicality, "typicality"},
	{LabelKind::SparseSoft, "sparse"},
	{LabelKind::TopClass, "topclass"},
	{LabelKind::PcaCoords, "pca"},
};

void requireKind(const LabelSet& labels, LabelKind kind, const char* op) {
	if (labels.kind != kind) {
		throw KindError(std::string(op) + " expects " + std::string(toString(kind)) +
			" labels, got " + std::string(toString(labels.kind)));
	}
}

Eigen::MatrixXd pointCentroidDistances(const LatentDataset& data) {
	Eigen::MatrixXd dist(data.points.rows(), data.centroids.rows());
	for (Eigen::Index i = 0; i < data.points.rows(); ++i)
		for (Eigen::Index j = 0; j < data.centroids.rows(); ++j)
			dist(i, j) = (data.points.row(i) - data.centroids.row(j)).norm();
	return dist;
}

Eigen::Index hardClass(const LabelSet& hard, Eigen::Index row) {
	Eigen::Index cls = 0;
	hard.values.row(row).maxCoeff(&cls);
	return cls;
}

/// Bin index per value with equal-frequency bins; tied values share the bin
/// of their lowest rank.
std::vector<int> equalFrequencyBins(const std::vector<double>& values, int bins) {
	const std::size_t count = values.size();
	std::vector<std::size_t> order(count);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(),
		[&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
	std::vector<int> bin(count, 0);
	std::size_t groupStart = 0;
	for (std::size_t r = 0; r < count; ++r) {
		if (r > 0 && values[order[r]] != values[order[r - 1]]) groupStart = r;
		const auto b = static_cast<int>(groupStart * static_cast<std::size_t>(bins) / count);
		bin[order[r]] = std::min(b, bins - 1);
	}
	return bin;
}

} // namespace

std::string_view toString(LabelKind kind) {
	for (const auto& [k, name] : kKindNames)
		if (k == kind) return name;
	return "unknown";
}

LabelKind labelKindFromString(std::string_view name) {
	for (const auto& [k, n] : kKindNames)
		if (n == name) return k;
	throw FormatError("unknown label kind '" + std::string(name) + "'");
}

bool isSoftVariant(LabelKind kind) {
	return kind == LabelKind::Soft || kind == LabelKind::Smoothed ||
		kind == LabelKind::Typicality || kind == LabelKind::SparseSoft ||
		kind == LabelKind::TopClass;
}

LabelSet hardLabels(const LatentDataset& data) {
	const Eigen::MatrixXd dist = pointCentroidDistances(data);
	LabelSet out;
	out.kind = LabelKind::Hard;
	out.values = Eigen::MatrixXd::Zero(dist.rows(), dist.cols());
	for (Eigen::Index i = 0; i < dist.rows(); ++i) {
		Eigen::Index best = 0;
		// minCoeff returns the first minimum, i.e. the lowest class on ties.
		dist.row(i).minCoeff(&best);
		out.values(i, best) = 1.0;
	}
	return out;
}

LabelSet softLabels(const LatentDataset& data) {
	const Eigen::MatrixXd dist = pointCentroidDistances(data);
	LabelSet out;
	out.kind = LabelKind::Soft;
	out.values.resize(dist.rows(), dist.cols());
	for (Eigen::Index i = 0; i < dist.rows(); ++i) {
		const double shift = dist.row(i).minCoeff();
		Eigen::RowVectorXd e = (-(dist.row(i).array() - shift)).exp().matrix();
		out.values.row(i) = e / e.sum();
	}
	return out;
}

LabelSet smoothLabels(const LabelSet& hard, double epsilon) {
	requireKind(hard, LabelKind::Hard, "smoothLabels");
	if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ParameterError("smoothing rate must lie in [0, 1)");
	const Eigen::Index k = hard.values.cols();
	LabelSet out;
	out.kind = LabelKind::Smoothed;
	out.values.resize(hard.values.rows(), k);
	const double other = k > 1 ? epsilon / static_cast<double>(k - 1) : 0.0;
	for (Eigen::Index i = 0; i < hard.values.rows(); ++i) {
		out.values.row(i).setConstant(other);
		out.values(i, hardClass(hard, i)) = k > 1 ? 1.0 - epsilon : 1.0;
	}
	return out;
}

LabelSet typicalityLabels(const LabelSet& hard, const std::vector<double>& typicality) {
	requireKind(hard, LabelKind::Hard, "typicalityLabels");
	if (typicality.size() != hard.rows()) throw ShapeError("one typicality score per point required");
	const Eigen::Index k = hard.values.cols();
	LabelSet out;
	out.kind = LabelKind::Typicality;
	out.values.resize(hard.values.rows(), k);
	for (Eigen::Index i = 0; i < hard.values.rows(); ++i) {
		const double p = typicality[static_cast<std::size_t>(i)];
		if (!(p > 0.0 && p <= 1.0)) throw ParameterError("typicality scores must lie in (0, 1]");
		out.values.row(i).setConstant(k > 1 ? (1.0 - p) / static_cast<double>(k - 1) : 0.0);
		out.values(i, hardClass(hard, i)) = k > 1 ? p : 1.0;
	}
	return out;
}

std::vector<double> defaultTypicality(const LabelSet& hard, const LabelSet& soft) {
	requireKind(hard, LabelKind::Hard, "defaultTypicality");
	if (hard.rows() != soft.rows() || hard.cols() != soft.cols()) throw ShapeError("label shapes differ");
	std::vector<double> scores(hard.rows());
	for (Eigen::Index i = 0; i < hard.values.rows(); ++i)
		scores[static_cast<std::size_t>(i)] = soft.values(i, hardClass(hard, i));
	return scores;
}

LabelSet sparsifyLabels(const LabelSet& soft, int k_hat, bool renormalize) {
	if (soft.kind != LabelKind::Soft && soft.kind != LabelKind::Smoothed &&
		soft.kind != LabelKind::Typicality) {
		throw KindError("sparsifyLabels expects soft, smoothed or typicality labels");
	}
	const auto k = static_cast<int>(soft.cols());
	if (k_hat < 1 || k_hat > k) throw ParameterError("k_hat must lie in [1, k]");

	LabelSet out;
	out.kind = LabelKind::SparseSoft;
	out.k_hat = k_hat;
	out.values = Eigen::MatrixXd::Zero(soft.values.rows(), k);
	std::vector<int> order(static_cast<std::size_t>(k));
	for (Eigen::Index i = 0; i < soft.values.rows(); ++i) {
		std::iota(order.begin(), order.end(), 0);
		std::stable_sort(order.begin(), order.end(),
			[&](int a, int b) { return soft.values(i, a) > soft.values(i, b); });
		for (int r = 0; r < k_hat; ++r) out.values(i, order[static_cast<std::size_t>(r)]) = soft.values(i, order[static_cast<std::size_t>(r)]);
		if (renormalize) {
			const double total = out.values.row(i).sum();
			if (total > 0.0) out.values.row(i) /= total;
		}
	}
	return out;
}

double columnMutualInformation(const Eigen::VectorXd& column,
	const SimilarityMatrix& reference, int bins) {
	const auto n = static_cast<std::size_t>(column.size());
	if (n < 3) throw InsufficientDataError("mutual information needs at least 3 points");
	if (reference.size() != n) throw ShapeError("reference similarity size differs from column length");
	if (bins < 2) throw ParameterError("bins must be >= 2");

	std::vector<double> gaps;
	std::vector<double> sims;
	gaps.reserve(n * (n - 1) / 2);
	sims.reserve(n * (n - 1) / 2);
	for (std::size_t a = 0; a < n; ++a) {
		for (std::size_t b = a + 1; b < n; ++b) {
			gaps.push_back(std::abs(column(static_cast<Eigen::Index>(a)) - column(static_cast<Eigen::Index>(b))));
			sims.push_back(reference.at(a, b));
		}
	}
	const std::vector<int> bx = equalFrequencyBins(gaps, bins);
	const std::vector<int> by = equalFrequencyBins(sims, bins);

	Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(bins, bins);
	for (std::size_t p = 0; p < bx.size(); ++p) joint(bx[p], by[p]) += 1.0;
	joint /= static_cast<double>(bx.size());
	const Eigen::VectorXd px = joint.rowwise().sum();
	const Eigen::RowVectorXd py = joint.colwise().sum();

	double mi = 0.0;
	for (int x = 0; x < bins; ++x)
		for (int y = 0; y < bins; ++y)
			if (joint(x, y) > 0.0) mi += joint(x, y) * std::log2(joint(x, y) / (px(x) * py(y)));
	return std::max(0.0, mi);
}

LabelSet topclassLabels(const LabelSet& soft, int k_hat,
	const SimilarityMatrix& reference, int bins) {
	requireKind(soft, LabelKind::Soft, "topclassLabels");
	const auto k = static_cast<int>(soft.cols());
	if (k_hat < 1 || k_hat > k) throw ParameterError("k_hat must lie in [1, k]");
	if (reference.size() != soft.rows()) throw ShapeError("reference must cover exactly the labelled points");

	std::vector<double> score(static_cast<std::size_t>(k));
	for (int j = 0; j < k; ++j)
		score[static_cast<std::size_t>(j)] = columnMutualInformation(soft.values.col(j), reference, bins);
	std::vector<int> order(static_cast<std::size_t>(k));
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(),
		[&](int a, int b) { return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)]; });

	LabelSet out;
	out.kind = LabelKind::TopClass;
	out.k_hat = k_hat;
	out.retained_columns.assign(order.begin(), order.begin() + k_hat);
	std::sort(out.retained_columns.begin(), out.retained_columns.end());
	out.values = Eigen::MatrixXd::Zero(soft.values.rows(), k);
	for (int j : out.retained_columns) out.values.col(j) = soft.values.col(j);
	return out;
}

LabelSet pcaEncode(const Eigen::MatrixXd& items, int k_hat) {
	const auto limit = std::min<Eigen::Index>(items.cols(), items.rows());
	if (k_hat < 1 || k_hat > limit) throw ParameterError("k_hat must lie in [1, min(d, items)]");

	const Eigen::MatrixXd centered = items.rowwise() - items.colwise().mean();
	const Eigen::MatrixXd scatter = centered.transpose() * centered;
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter);
	if (eig.info() != Eigen::Success) throw NumericError("PCA eigendecomposition failed");

	const Eigen::Index d = items.cols();
	Eigen::MatrixXd basis(d, k_hat);
	for (int c = 0; c < k_hat; ++c) {
		Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);
		Eigen::Index lead = 0;
		v.cwiseAbs().maxCoeff(&lead);
		if (v(lead) < 0.0) v = -v;
		basis.col(c) = v;
	}

	LabelSet out;
	out.kind = LabelKind::PcaCoords;
	out.k_hat = k_hat;
	out.values = centered * basis;
	return out;
}

LabelSet pcaEncode(const LatentDataset& data, int k_hat) {
	return pcaEncode(data.stacked(), k_hat);
}

Eigen::MatrixXd softLabelItems(const LabelSet& soft) {
	if (!isSoftVariant(soft.kind)) throw KindError("softLabelItems expects a soft label variant");
	const Eigen::Index k = soft.values.cols();
	Eigen::MatrixXd items(soft.values.rows() + k, k);
	items << soft.values, Eigen::MatrixXd::Identity(k, k);
	return items;
}

} // namespace labelbits
