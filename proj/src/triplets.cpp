#include <labelbits/triplets.hpp>
#include <labelbits/errors.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace labelbits {

namespace {

std::uint32_t idx(std::size_t i) { return static_cast<std::uint32_t>(i); }

ConstraintSet emptySet(std::size_t n, std::size_t k, LabelKind kind) {
	ConstraintSet set;
	set.n_points = n;
	set.n_centroids = k;
	set.source_kind = std::string(toString(kind));
	return set;
}

void finalize(ConstraintSet& set) {
	std::sort(set.constraints.begin(), set.constraints.end());
}

} // namespace

ConstraintSet mineFromHard(const LabelSet& labels) {
	if (labels.kind != LabelKind::Hard) throw KindError("mineFromHard expects hard labels");
	const std::size_t n = labels.rows();
	const std::size_t k = labels.cols();
	std::vector<std::size_t> cls(n);
	for (std::size_t i = 0; i < n; ++i) {
		Eigen::Index c = 0;
		labels.values.row(static_cast<Eigen::Index>(i)).maxCoeff(&c);
		cls[i] = static_cast<std::size_t>(c);
	}

	ConstraintSet set = emptySet(n, k, labels.kind);
	// Centroid anchored: members of class c are closer to C_c than non-members.
	for (std::size_t c = 0; c < k; ++c)
		for (std::size_t pos = 0; pos < n; ++pos) {
			if (cls[pos] != c) continue;
			for (std::size_t neg = 0; neg < n; ++neg)
				if (cls[neg] != c) set.constraints.push_back({idx(n + c), idx(pos), idx(neg)});
		}
	// Point anchored: the labelled centroid is closer than every other one.
	for (std::size_t x = 0; x < n; ++x)
		for (std::size_t other = 0; other < k; ++other)
			if (other != cls[x]) set.constraints.push_back({idx(x), idx(n + cls[x]), idx(n + other)});
	finalize(set);
	return set;
}

ConstraintSet mineFromSoft(const LabelSet& labels) {
	if (!isSoftVariant(labels.kind)) {
		throw KindError("mineFromSoft expects a soft label variant, got " +
			std::string(toString(labels.kind)));
	}
	const std::size_t n = labels.rows();
	const std::size_t k = labels.cols();
	const Eigen::MatrixXd& l = labels.values;

	ConstraintSet set = emptySet(n, k, labels.kind);
	for (std::size_t c = 0; c < k; ++c) {
		const auto cc = static_cast<Eigen::Index>(c);
		for (std::size_t p = 0; p < n; ++p)
			for (std::size_t q = 0; q < n; ++q)
				if (l(static_cast<Eigen::Index>(p), cc) > l(static_cast<Eigen::Index>(q), cc))
					set.constraints.push_back({idx(n + c), idx(p), idx(q)});
	}
	for (std::size_t x = 0; x < n; ++x) {
		const auto row = static_cast<Eigen::Index>(x);
		for (std::size_t i = 0; i < k; ++i)
			for (std::size_t j = 0; j < k; ++j)
				if (l(row, static_cast<Eigen::Index>(i)) > l(row, static_cast<Eigen::Index>(j)))
					set.constraints.push_back({idx(x), idx(n + i), idx(n + j)});
	}
	finalize(set);
	return set;
}

ConstraintSet mineFromCoordinates(const LabelSet& labels, std::size_t n_points) {
	if (labels.kind != LabelKind::PcaCoords) throw KindError("mineFromCoordinates expects PCA coordinates");
	const std::size_t m = labels.rows();
	if (n_points > m) throw ShapeError("more points than encoded items");

	Eigen::MatrixXd sq(m, m);
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j)
			sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
				(labels.values.row(static_cast<Eigen::Index>(i)) - labels.values.row(static_cast<Eigen::Index>(j))).squaredNorm();

	ConstraintSet set = emptySet(n_points, m - n_points, labels.kind);
	set.constraints.reserve(static_cast<std::size_t>(totalQueries(m)));
	for (std::size_t a = 0; a < m; ++a) {
		const auto ra = static_cast<Eigen::Index>(a);
		for (std::size_t b = 0; b < m; ++b) {
			if (b == a) continue;
			for (std::size_t c = b + 1; c < m; ++c) {
				if (c == a) continue;
				const double db = sq(ra, static_cast<Eigen::Index>(b));
				const double dc = sq(ra, static_cast<Eigen::Index>(c));
				if (db < dc) set.constraints.push_back({idx(a), idx(b), idx(c)});
				else if (dc < db) set.constraints.push_back({idx(a), idx(c), idx(b)});
			}
		}
	}
	finalize(set);
	return set;
}

ConstraintSet mine(const LabelSet& labels, std::size_t n_points) {
	if (labels.kind == LabelKind::Hard) return mineFromHard(labels);
	if (labels.kind == LabelKind::PcaCoords) return mineFromCoordinates(labels, n_points);
	return mineFromSoft(labels);
}

Rational countHard(std::int64_t n, std::int64_t k) {
	if (n < 1 || k < 1) throw ParameterError("counts need n >= 1 and k >= 1");
	// n(k-1) + n^2 (k-1)/k = n (k-1) (n+k) / k
	Rational r{n * (k - 1) * (n + k), k};
	const std::int64_t g = std::gcd(r.num, r.den);
	if (g > 1) {
		r.num /= g;
		r.den /= g;
	}
	return r;
}

std::int64_t countSoft(std::int64_t n, std::int64_t k) {
	if (n < 1 || k < 1) throw ParameterError("counts need n >= 1 and k >= 1");
	return k * n * (k + n - 2) / 2;
}

double totalQueries(std::size_t items) {
	if (items < 3) return 0.0;
	const auto m = static_cast<double>(items);
	return m * (m - 1.0) * (m - 2.0) / 2.0;
}

double informationRatio(double constraint_count, std::size_t n, std::size_t k) {
	if (n + k < 3) throw ParameterError("information ratio needs n + k >= 3");
	if (!(constraint_count >= 0.0)) throw ParameterError("constraint count must be non-negative");
	return constraint_count / totalQueries(n + k);
}

ConstraintSet applyNoise(const ConstraintSet& set, double epsilon, std::uint64_t seed) {
	if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ParameterError("flip rate must lie in [0, 1]");
	ConstraintSet out = set;
	out.flip_rate = epsilon;
	std::mt19937_64 rng(seed);
	for (auto& t : out.constraints) {
		const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
		if (u < epsilon) std::swap(t.near, t.far);
	}
	return out;
}

double inconsistencyRate(const ConstraintSet& set, const Eigen::MatrixXd& items) {
	if (static_cast<std::size_t>(items.rows()) != set.items()) throw ShapeError("item count mismatch");
	if (set.constraints.empty()) return 0.0;
	std::size_t bad = 0;
	for (const auto& t : set.constraints) {
		const double dn = (items.row(t.anchor) - items.row(t.near)).squaredNorm();
		const double df = (items.row(t.anchor) - items.row(t.far)).squaredNorm();
		if (!(dn < df)) ++bad;
	}
	return static_cast<double>(bad) / static_cast<double>(set.constraints.size());
}

} // namespace labelbits
