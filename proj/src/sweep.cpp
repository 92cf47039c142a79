#include <labelbits/sweep.hpp>
#include <labelbits/errors.hpp>
#include <labelbits/io.hpp>
#include <labelbits/metrics.hpp>
#include <labelbits/triplets.hpp>

#include <json.hpp>

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace labelbits {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t splitmix(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix(h ^ splitmix(v)); }

const std::vector<std::string> kColumns = {
	"n", "k", "d", "kind", "k_hat", "epsilon", "rep", "seed", "constraint_count",
	"ir", "rho", "satisfied_fraction", "c_hat", "loss", "status"};

std::string sanitize(std::string text) {
	for (char& c : text)
		if (c == ',' || c == '\n' || c == '\r') c = ';';
	return text;
}

Json signalToJson(const SignalSpec& s) {
	Json j;
	j["kind"] = std::string(toString(s.kind));
	j["k_hat"] = s.k_hat;
	if (s.kind == LabelKind::Smoothed) j["smoothing"] = s.smoothing;
	return j;
}

template <typename T>
void readIf(const Json& j, const char* key, T& out) {
	if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

void SweepSpec::validate() const {
	if (n_grid.empty() || k_grid.empty() || d_grid.empty() || signals.empty() || epsilon_grid.empty()) {
		throw ParameterError("sweep grids must be non-empty");
	}
	if (reps < 1) throw ParameterError("reps must be >= 1");
	if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
	for (int n : n_grid)
		if (n < 1) throw ParameterError("n values must be >= 1");
	for (int k : k_grid)
		if (k < 2) throw ParameterError("k values must be >= 2");
	for (int d : d_grid)
		if (d < 1) throw ParameterError("d values must be >= 1");
	for (int n : n_grid)
		for (int k : k_grid)
			if (n + k < 3) throw ParameterError("every (n, k) cell needs n + k >= 3");
	for (double e : epsilon_grid)
		if (!(e >= 0.0 && e <= 1.0)) throw ParameterError("flip rates must lie in [0, 1]");
	for (const auto& s : signals)
		if (s.k_hat < 0) throw ParameterError("k_hat must be >= 0");
	if (mi_bins < 2) throw ParameterError("mi_bins must be >= 2");
	if (tradeoff.beta < 0.0) throw ParameterError("beta must be >= 0");
	solver.validate();
}

std::size_t SweepSpec::rowCount() const {
	return n_grid.size() * k_grid.size() * d_grid.size() * signals.size() *
		epsilon_grid.size() * static_cast<std::size_t>(reps);
}

bool SweepResult::allOk() const {
	for (const auto& r : rows)
		if (!r.ok()) return false;
	return true;
}

std::uint64_t cellSeed(std::uint64_t base, int n, int k, int d, int rep) {
	std::uint64_t h = splitmix(base);
	h = mix(h, static_cast<std::uint64_t>(n));
	h = mix(h, static_cast<std::uint64_t>(k));
	h = mix(h, static_cast<std::uint64_t>(d));
	return mix(h, static_cast<std::uint64_t>(rep));
}

int effectiveKHat(const SignalSpec& signal, int n, int k, int d, bool pca_on_labels) {
	switch (signal.kind) {
	case LabelKind::Hard:
		return 1;
	case LabelKind::Soft:
	case LabelKind::Smoothed:
	case LabelKind::Typicality:
		return k;
	case LabelKind::SparseSoft:
	case LabelKind::TopClass:
		return signal.k_hat == 0 ? k : std::min(signal.k_hat, k);
	case LabelKind::PcaCoords: {
		const int limit = std::min(pca_on_labels ? k : d, n + k);
		return signal.k_hat == 0 ? limit : std::min(signal.k_hat, limit);
	}
	}
	return k;
}

SweepRow evaluateCell(const SweepSpec& spec, int n, int k, int d,
	const SignalSpec& signal, double epsilon, int rep) {
	const auto start = std::chrono::steady_clock::now();
	SweepRow row;
	row.n = n;
	row.k = k;
	row.d = d;
	row.kind = signal.kind;
	row.epsilon = epsilon;
	row.rep = rep;
	row.seed = cellSeed(spec.seed, n, k, d, rep);
	row.k_hat = effectiveKHat(signal, n, k, d, spec.pca_on_labels);
	row.rho = std::numeric_limits<double>::quiet_NaN();
	row.loss = std::numeric_limits<double>::quiet_NaN();

	try {
		const auto nn = static_cast<std::size_t>(n);
		const LatentDataset data = generateDataset(nn, static_cast<std::size_t>(k),
			static_cast<std::size_t>(d), spec.sigma, row.seed);
		const SimilarityMatrix truth = similarityMatrix(data.stacked(), true);

		LabelSet labels;
		switch (signal.kind) {
		case LabelKind::Hard:
			labels = hardLabels(data);
			break;
		case LabelKind::Soft:
			labels = softLabels(data);
			break;
		case LabelKind::Smoothed:
			labels = smoothLabels(hardLabels(data), signal.smoothing);
			break;
		case LabelKind::Typicality: {
			const LabelSet hard = hardLabels(data);
			labels = typicalityLabels(hard, defaultTypicality(hard, softLabels(data)));
			break;
		}
		case LabelKind::SparseSoft:
			labels = sparsifyLabels(softLabels(data), row.k_hat, spec.renormalize_sparse);
			break;
		case LabelKind::TopClass:
			labels = topclassLabels(softLabels(data), row.k_hat, truth.leading(nn), spec.mi_bins);
			break;
		case LabelKind::PcaCoords:
			labels = spec.pca_on_labels ? pcaEncode(softLabelItems(softLabels(data)), row.k_hat)
			                            : pcaEncode(data, row.k_hat);
			break;
		}

		const ConstraintSet mined = mine(labels, nn);
		row.constraint_count = mined.size();
		row.ir = informationRatio(static_cast<double>(mined.size()), nn, static_cast<std::size_t>(k));
		row.c_hat = cost(signal.kind, n, k, row.k_hat);

		std::uint64_t noiseSeed = mix(row.seed, static_cast<std::uint64_t>(signal.kind));
		noiseSeed = mix(noiseSeed, static_cast<std::uint64_t>(row.k_hat));
		noiseSeed = mix(noiseSeed, std::bit_cast<std::uint64_t>(epsilon));
		const ConstraintSet noisy = applyNoise(mined, epsilon, noiseSeed);

		if (noisy.constraints.empty()) {
			// Nothing to fit: the embedding stays at the zero matrix.
			row.status = "no constraints";
		} else {
			SolverConfig cfg = spec.solver;
			cfg.seed = row.seed;
			const GramMatrix gram = solve(noisy, cfg);
			row.satisfied_fraction = gram.diagnostics.satisfied_fraction;
			row.rho = recoveryScore(gram, truth, spec.cosine_gram);
			row.loss = loss(SignalOption{signal.kind, row.k_hat, row.rho, row.c_hat}, spec.tradeoff);
		}
	} catch (const std::exception& e) {
		row.status = sanitize(e.what());
	}
	row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return row;
}

SweepResult runSweep(const SweepSpec& spec, unsigned workers) {
	spec.validate();
	struct Job {
		int n, k, d;
		std::size_t signal;
		double epsilon;
		int rep;
	};
	std::vector<Job> jobs;
	jobs.reserve(spec.rowCount());
	for (int n : spec.n_grid)
		for (int k : spec.k_grid)
			for (int d : spec.d_grid)
				for (std::size_t s = 0; s < spec.signals.size(); ++s)
					for (double e : spec.epsilon_grid)
						for (int rep = 0; rep < spec.reps; ++rep) jobs.push_back({n, k, d, s, e, rep});

	SweepResult result;
	result.rows.resize(jobs.size());
	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for (std::size_t i = next++; i < jobs.size(); i = next++) {
			const Job& j = jobs[i];
			result.rows[i] = evaluateCell(spec, j.n, j.k, j.d, spec.signals[j.signal], j.epsilon, j.rep);
		}
	};
	const unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
	if (count == 1) {
		work();
	} else {
		std::vector<std::jthread> pool;
		pool.reserve(count);
		for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
	}
	return result;
}

std::string sweepToCsv(const SweepResult& result, bool with_timing) {
	std::string out;
	for (std::size_t c = 0; c < kColumns.size(); ++c) {
		if (c > 0) out += ',';
		out += kColumns[c];
	}
	if (with_timing) out += ",wall_time";
	out += '\n';
	for (const auto& r : result.rows) {
		out += std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.d) + ',' +
			std::string(toString(r.kind)) + ',' + std::to_string(r.k_hat) + ',' + formatDouble(r.epsilon) + ',' +
			std::to_string(r.rep) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.constraint_count) + ',' +
			formatDouble(r.ir) + ',' + formatDouble(r.rho) + ',' + formatDouble(r.satisfied_fraction) + ',' +
			formatDouble(r.c_hat) + ',' + formatDouble(r.loss) + ',' + sanitize(r.status);
		if (with_timing) out += ',' + formatDouble(r.wall_time);
		out += '\n';
	}
	return out;
}

SweepResult sweepFromCsv(std::string_view text) {
	SweepResult result;
	std::size_t start = 0;
	bool header = true;
	bool timing = false;
	while (start < text.size()) {
		std::size_t end = text.find('\n', start);
		if (end == std::string_view::npos) end = text.size();
		const std::string_view line = text.substr(start, end - start);
		start = end + 1;
		if (line.empty()) continue;
		auto f = splitCsvLine(line);
		if (header) {
			header = false;
			timing = f.size() == kColumns.size() + 1;
			for (std::size_t c = 0; c < kColumns.size(); ++c)
				if (c >= f.size() || f[c] != kColumns[c]) throw FormatError("unexpected sweep CSV header");
			continue;
		}
		if (f.size() != kColumns.size() + (timing ? 1 : 0)) throw FormatError("sweep CSV row has wrong field count");
		SweepRow r;
		try {
			r.n = std::stoi(f[0]);
			r.k = std::stoi(f[1]);
			r.d = std::stoi(f[2]);
			r.kind = labelKindFromString(f[3]);
			r.k_hat = std::stoi(f[4]);
			r.epsilon = std::stod(f[5]);
			r.rep = std::stoi(f[6]);
			r.seed = std::stoull(f[7]);
			r.constraint_count = std::stoull(f[8]);
			r.ir = std::stod(f[9]);
			r.rho = std::stod(f[10]);
			r.satisfied_fraction = std::stod(f[11]);
			r.c_hat = std::stod(f[12]);
			r.loss = std::stod(f[13]);
			r.status = f[14];
			if (timing) r.wall_time = std::stod(f[15]);
		} catch (const std::logic_error&) {
			throw FormatError("malformed sweep CSV row");
		}
		result.rows.push_back(std::move(r));
	}
	return result;
}

std::string toString(const SignalSpec& signal) {
	std::string out(toString(signal.kind));
	if (signal.k_hat > 0) out += ':' + std::to_string(signal.k_hat);
	return out;
}

std::string sweepSpecToJson(const SweepSpec& spec) {
	Json j;
	j["n_grid"] = spec.n_grid;
	j["k_grid"] = spec.k_grid;
	j["d_grid"] = spec.d_grid;
	j["signals"] = Json::array();
	for (const auto& s : spec.signals) j["signals"].push_back(signalToJson(s));
	j["epsilon_grid"] = spec.epsilon_grid;
	j["reps"] = spec.reps;
	j["sigma"] = spec.sigma;
	j["seed"] = spec.seed;
	j["solver"] = {
		{"margin", spec.solver.margin},
		{"lambda", spec.solver.lambda},
		{"step_size", spec.solver.step_size},
		{"step_growth", spec.solver.step_growth},
		{"max_iterations", spec.solver.max_iterations},
		{"tolerance", spec.solver.tolerance},
		{"window", spec.solver.window},
	};
	j["tradeoff"] = {
		{"beta", spec.tradeoff.beta},
		{"utility_kind", std::string(toString(spec.tradeoff.utility))},
	};
	j["cosine_gram"] = spec.cosine_gram;
	j["pca_on_labels"] = spec.pca_on_labels;
	j["renormalize_sparse"] = spec.renormalize_sparse;
	j["mi_bins"] = spec.mi_bins;
	return j.dump(2) + "\n";
}

SweepSpec sweepSpecFromJson(std::string_view text) {
	Json j;
	try {
		j = Json::parse(text);
	} catch (const nlohmann::json::parse_error& e) {
		throw FormatError(std::string("config is not valid JSON: ") + e.what());
	}
	SweepSpec spec;
	try {
		readIf(j, "n_grid", spec.n_grid);
		readIf(j, "k_grid", spec.k_grid);
		readIf(j, "d_grid", spec.d_grid);
		readIf(j, "epsilon_grid", spec.epsilon_grid);
		readIf(j, "reps", spec.reps);
		readIf(j, "sigma", spec.sigma);
		readIf(j, "seed", spec.seed);
		readIf(j, "cosine_gram", spec.cosine_gram);
		readIf(j, "pca_on_labels", spec.pca_on_labels);
		readIf(j, "renormalize_sparse", spec.renormalize_sparse);
		readIf(j, "mi_bins", spec.mi_bins);
		if (j.contains("signals")) {
			spec.signals.clear();
			for (const auto& s : j.at("signals")) {
				SignalSpec sig;
				if (s.is_string()) {
					sig.kind = labelKindFromString(s.get<std::string>());
				} else {
					sig.kind = labelKindFromString(s.at("kind").get<std::string>());
					readIf(s, "k_hat", sig.k_hat);
					readIf(s, "smoothing", sig.smoothing);
				}
				spec.signals.push_back(sig);
			}
		}
		if (j.contains("solver")) {
			const auto& s = j.at("solver");
			readIf(s, "margin", spec.solver.margin);
			readIf(s, "lambda", spec.solver.lambda);
			readIf(s, "step_size", spec.solver.step_size);
			readIf(s, "step_growth", spec.solver.step_growth);
			readIf(s, "max_iterations", spec.solver.max_iterations);
			readIf(s, "tolerance", spec.solver.tolerance);
			readIf(s, "window", spec.solver.window);
		}
		if (j.contains("tradeoff")) {
			const auto& t = j.at("tradeoff");
			readIf(t, "beta", spec.tradeoff.beta);
			if (t.contains("utility_kind")) spec.tradeoff.utility = utilityKindFromString(t.at("utility_kind").get<std::string>());
		}
	} catch (const nlohmann::json::exception& e) {
		throw FormatError(std::string("config field has the wrong type: ") + e.what());
	}
	spec.validate();
	return spec;
}

} // namespace labelbits
