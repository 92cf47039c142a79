#include <labelbits/metrics.hpp>
#include <labelbits/errors.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace labelbits {

std::vector<double> averageRanks(const std::vector<double>& values) {
	const std::size_t count = values.size();
	std::vector<std::size_t> order(count);
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(),
		[&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
	std::vector<double> ranks(count);
	std::size_t start = 0;
	while (start < count) {
		std::size_t end = start + 1;
		while (end < count && values[order[end]] == values[order[start]]) ++end;
		// Positions start..end-1 hold rank start+1..end; all share the mean.
		const double mean = 0.5 * static_cast<double>(start + 1 + end);
		for (std::size_t r = start; r < end; ++r) ranks[order[r]] = mean;
		start = end;
	}
	return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
	if (a.size() != b.size()) throw ShapeError("correlation inputs differ in length");
	if (a.size() < 2) throw DegenerateInputError("correlation needs at least two values");
	const auto count = static_cast<double>(a.size());
	const double ma = std::accumulate(a.begin(), a.end(), 0.0) / count;
	const double mb = std::accumulate(b.begin(), b.end(), 0.0) / count;
	double sab = 0.0, saa = 0.0, sbb = 0.0;
	for (std::size_t i = 0; i < a.size(); ++i) {
		sab += (a[i] - ma) * (b[i] - mb);
		saa += (a[i] - ma) * (a[i] - ma);
		sbb += (b[i] - mb) * (b[i] - mb);
	}
	if (saa == 0.0 || sbb == 0.0) throw DegenerateInputError("correlation of a constant vector is undefined");
	return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
	if (a.size() != b.size()) throw ShapeError("spearman inputs differ in length");
	if (a.size() < 3) throw DegenerateInputError("spearman needs at least three values");
	return pearson(averageRanks(a), averageRanks(b));
}

double recoveryScore(const Eigen::MatrixXd& gram, const SimilarityMatrix& truth, bool cosine_gram) {
	if (gram.rows() != gram.cols() || static_cast<std::size_t>(gram.rows()) != truth.size()) {
		throw ShapeError("Gram matrix and ground truth cover different item counts");
	}
	std::vector<double> predicted;
	predicted.reserve(truth.values().size());
	for (Eigen::Index i = 0; i < gram.rows(); ++i) {
		for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
			double v = gram(i, j);
			if (cosine_gram) {
				const double scale = std::sqrt(std::max(0.0, gram(i, i)) * std::max(0.0, gram(j, j)));
				v = scale > 0.0 ? v / scale : 0.0;
			}
			predicted.push_back(v);
		}
	}
	return spearman(predicted, truth.values());
}

double recoveryScore(const GramMatrix& gram, const SimilarityMatrix& truth, bool cosine_gram) {
	return recoveryScore(gram.entries, truth, cosine_gram);
}

namespace {

Eigen::MatrixXd squaredDistances(const Eigen::MatrixXd& coords) {
	const Eigen::Index m = coords.rows();
	Eigen::MatrixXd sq(m, m);
	for (Eigen::Index i = 0; i < m; ++i)
		for (Eigen::Index j = 0; j < m; ++j) sq(i, j) = (coords.row(i) - coords.row(j)).squaredNorm();
	return sq;
}

int distanceOrder(const Eigen::MatrixXd& sq, std::size_t a, std::size_t j, std::size_t l) {
	const double dj = sq(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
	const double dl = sq(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(l));
	return dj < dl ? -1 : (dl < dj ? 1 : 0);
}

} // namespace

TripletOracle TripletOracle::fromSimilarity(SimilarityMatrix similarity) {
	TripletOracle o;
	o.size_ = similarity.size();
	o.compare_ = [s = std::move(similarity)](std::size_t a, std::size_t j, std::size_t l) {
		const double sj = s.at(a, j);
		const double sl = s.at(a, l);
		return sj > sl ? -1 : (sl > sj ? 1 : 0);
	};
	return o;
}

TripletOracle TripletOracle::fromCoordinates(Eigen::MatrixXd coordinates) {
	TripletOracle o;
	o.size_ = static_cast<std::size_t>(coordinates.rows());
	o.compare_ = [sq = squaredDistances(coordinates)](std::size_t a, std::size_t j, std::size_t l) {
		return distanceOrder(sq, a, j, l);
	};
	return o;
}

TripletOracle TripletOracle::fromGram(const Eigen::MatrixXd& gram) {
	if (gram.rows() != gram.cols()) throw ShapeError("Gram matrix must be square");
	const Eigen::Index m = gram.rows();
	Eigen::MatrixXd sq(m, m);
	for (Eigen::Index i = 0; i < m; ++i)
		for (Eigen::Index j = 0; j < m; ++j) sq(i, j) = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
	TripletOracle o;
	o.size_ = static_cast<std::size_t>(m);
	o.compare_ = [sq = std::move(sq)](std::size_t a, std::size_t j, std::size_t l) {
		return distanceOrder(sq, a, j, l);
	};
	return o;
}

int TripletOracle::compare(std::size_t anchor, std::size_t j, std::size_t l) const {
	return compare_(anchor, j, l);
}

double tripletDisagreementRate(const TripletOracle& a, const TripletOracle& b,
	std::optional<std::size_t> sample_size, std::uint64_t seed) {
	if (a.size() != b.size()) throw ShapeError("structures cover different item counts");
	const std::size_t m = a.size();
	if (m < 3) throw InsufficientDataError("triplet queries need at least three items");

	std::size_t counted = 0;
	std::size_t differ = 0;
	auto visit = [&](std::size_t anchor, std::size_t j, std::size_t l) {
		const int ra = a.compare(anchor, j, l);
		const int rb = b.compare(anchor, j, l);
		if (ra == 0 || rb == 0) return;
		++counted;
		if (ra != rb) ++differ;
	};

	if (sample_size) {
		std::mt19937_64 rng(seed);
		std::uniform_int_distribution<std::size_t> pick(0, m - 1);
		for (std::size_t s = 0; s < *sample_size; ++s) {
			const std::size_t anchor = pick(rng);
			std::size_t j = pick(rng);
			while (j == anchor) j = pick(rng);
			std::size_t l = pick(rng);
			while (l == anchor || l == j) l = pick(rng);
			visit(anchor, std::min(j, l), std::max(j, l));
		}
	} else {
		for (std::size_t anchor = 0; anchor < m; ++anchor)
			for (std::size_t j = 0; j < m; ++j) {
				if (j == anchor) continue;
				for (std::size_t l = j + 1; l < m; ++l)
					if (l != anchor) visit(anchor, j, l);
			}
	}
	return counted == 0 ? 0.0 : static_cast<double>(differ) / static_cast<double>(counted);
}

LabelStats labelStats(const LabelSet& labels) {
	if (labels.kind == LabelKind::PcaCoords) throw KindError("label statistics need probability rows");
	const Eigen::MatrixXd& v = labels.values;
	const Eigen::Index rows = v.rows();
	const Eigen::Index k = v.cols();
	if (rows == 0 || k == 0) throw InsufficientDataError("empty label set");
	for (Eigen::Index i = 0; i < rows; ++i) {
		if ((v.row(i).array() < 0.0).any() || std::abs(v.row(i).sum() - 1.0) > 1e-6) {
			throw KindError("row " + std::to_string(i) + " is not a probability vector");
		}
	}

	std::vector<double> maxima(static_cast<std::size_t>(rows));
	double entropy = 0.0;
	for (Eigen::Index i = 0; i < rows; ++i) {
		double h = 0.0;
		for (Eigen::Index j = 0; j < k; ++j) {
			const double p = v(i, j);
			if (p > 0.0) h -= p * std::log2(p);
		}
		entropy += h;
		maxima[static_cast<std::size_t>(i)] = v.row(i).maxCoeff();
	}

	LabelStats stats;
	stats.mean_entropy = entropy / static_cast<double>(rows);
	const double meanMax = std::accumulate(maxima.begin(), maxima.end(), 0.0) / static_cast<double>(rows);
	double var = 0.0;
	for (double x : maxima) var += (x - meanMax) * (x - meanMax);
	stats.variance_first_order = var / static_cast<double>(rows);
	const double hmax = std::log2(static_cast<double>(k));
	stats.normalized_entropy = hmax > 0.0 ? std::clamp(stats.mean_entropy / hmax, 0.0, 1.0) : 0.0;
	stats.stochastic_ir = 1.0 - stats.normalized_entropy;
	return stats;
}

void PcaCurve::validate() const {
	for (std::size_t i = 1; i < points.size(); ++i) {
		if (points[i].k_hat <= points[i - 1].k_hat) throw ParameterError("PCA curve k_hat must increase strictly");
	}
}

EffectiveDimensionality effectiveDimensionality(double rho_target, const PcaCurve& curve) {
	if (curve.points.empty()) throw InsufficientDataError("effective dimensionality needs a non-empty curve");
	curve.validate();
	for (const auto& p : curve.points)
		if (p.rho >= rho_target) return {p.k_hat, false};
	return {curve.points.back().k_hat, true};
}

} // namespace labelbits
