#include <labelbits/io.hpp>
#include <labelbits/errors.hpp>

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace labelbits {

namespace {

std::vector<std::string> lines(std::string_view text) {
	std::vector<std::string> out;
	std::size_t start = 0;
	while (start < text.size()) {
		std::size_t end = text.find('\n', start);
		if (end == std::string_view::npos) end = text.size();
		std::string line(text.substr(start, end - start));
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (!line.empty()) out.push_back(std::move(line));
		start = end + 1;
	}
	return out;
}

double parseDouble(const std::string& field) {
	try {
		std::size_t used = 0;
		const double v = std::stod(field, &used);
		if (used != field.size()) throw FormatError("trailing characters in number '" + field + "'");
		return v;
	} catch (const std::logic_error&) {
		throw FormatError("expected a number, got '" + field + "'");
	}
}

std::uint64_t parseUnsigned(const std::string& field) {
	std::uint64_t v = 0;
	const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
	if (ec != std::errc() || ptr != field.data() + field.size()) {
		throw FormatError("expected a non-negative integer, got '" + field + "'");
	}
	return v;
}

void appendRow(std::string& out, const Eigen::RowVectorXd& row) {
	for (Eigen::Index j = 0; j < row.size(); ++j) {
		if (j > 0) out += ',';
		out += formatDouble(row(j));
	}
	out += '\n';
}

} // namespace

std::string formatDouble(double value) {
	char buf[64];
	const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
	if (ec != std::errc()) throw NumericError("failed to format number");
	return std::string(buf, ptr);
}

std::vector<std::string> splitCsvLine(std::string_view line) {
	if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
	std::vector<std::string> fields;
	std::size_t start = 0;
	while (true) {
		const std::size_t comma = line.find(',', start);
		fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
		if (comma == std::string_view::npos) break;
		start = comma + 1;
	}
	return fields;
}

std::string readFile(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw FormatError("cannot open " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void writeFile(const std::filesystem::path& path, std::string_view content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw FormatError("cannot write " + path.string());
	out << content;
}

std::string datasetToCsv(const LatentDataset& data) {
	std::string out = "role,class";
	for (std::size_t j = 0; j < data.d(); ++j) out += ",x" + std::to_string(j);
	out += '\n';
	for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
		out += "point," + std::to_string(data.assignments[static_cast<std::size_t>(i)]) + ',';
		appendRow(out, data.points.row(i));
	}
	for (Eigen::Index c = 0; c < data.centroids.rows(); ++c) {
		out += "centroid," + std::to_string(c) + ',';
		appendRow(out, data.centroids.row(c));
	}
	return out;
}

std::string labelsToCsv(const LabelSet& labels) {
	const bool top = labels.kind == LabelKind::TopClass;
	std::string out = top ? "kind,k_hat,retained_columns\n" : "kind,k_hat\n";
	out += std::string(toString(labels.kind)) + ',';
	if (labels.k_hat) out += std::to_string(*labels.k_hat);
	if (top) {
		out += ',';
		for (std::size_t i = 0; i < labels.retained_columns.size(); ++i) {
			if (i > 0) out += ';';
			out += std::to_string(labels.retained_columns[i]);
		}
	}
	out += '\n';
	for (Eigen::Index i = 0; i < labels.values.rows(); ++i) appendRow(out, labels.values.row(i));
	return out;
}

LabelSet labelsFromCsv(std::string_view text) {
	const auto rows = lines(text);
	if (rows.size() < 2) throw FormatError("label CSV needs a header block");
	const auto head = splitCsvLine(rows[0]);
	const auto meta = splitCsvLine(rows[1]);
	if (head.size() < 2 || head[0] != "kind" || head[1] != "k_hat" || meta.size() != head.size()) {
		throw FormatError("label CSV header must be kind,k_hat");
	}
	LabelSet labels;
	labels.kind = labelKindFromString(meta[0]);
	if (!meta[1].empty()) labels.k_hat = static_cast<int>(parseUnsigned(meta[1]));
	if (head.size() > 2) {
		std::string_view cols = meta[2];
		std::size_t start = 0;
		while (start < cols.size()) {
			std::size_t end = cols.find(';', start);
			if (end == std::string_view::npos) end = cols.size();
			labels.retained_columns.push_back(static_cast<int>(parseUnsigned(std::string(cols.substr(start, end - start)))));
			start = end + 1;
		}
	}
	const std::size_t count = rows.size() - 2;
	std::size_t width = count > 0 ? splitCsvLine(rows[2]).size() : 0;
	labels.values.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(width));
	for (std::size_t i = 0; i < count; ++i) {
		const auto fields = splitCsvLine(rows[i + 2]);
		if (fields.size() != width) throw FormatError("ragged label row " + std::to_string(i));
		for (std::size_t j = 0; j < width; ++j)
			labels.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parseDouble(fields[j]);
	}
	return labels;
}

std::string constraintsToCsv(const ConstraintSet& set) {
	std::string out = "n,k,source_kind,flip_rate\n";
	out += std::to_string(set.n_points) + ',' + std::to_string(set.n_centroids) + ',' +
		set.source_kind + ',' + formatDouble(set.flip_rate) + '\n';
	out += "anchor,near,far\n";
	for (const auto& t : set.constraints) {
		out += std::to_string(t.anchor) + ',' + std::to_string(t.near) + ',' + std::to_string(t.far) + '\n';
	}
	return out;
}

ConstraintSet constraintsFromCsv(std::string_view text) {
	const auto rows = lines(text);
	if (rows.size() < 2 || rows[0] != "n,k,source_kind,flip_rate") {
		throw FormatError("constraint CSV must start with n,k,source_kind,flip_rate");
	}
	const auto meta = splitCsvLine(rows[1]);
	if (meta.size() != 4) throw FormatError("constraint CSV header row needs four fields");
	ConstraintSet set;
	set.n_points = parseUnsigned(meta[0]);
	set.n_centroids = parseUnsigned(meta[1]);
	set.source_kind = meta[2];
	set.flip_rate = parseDouble(meta[3]);
	std::size_t first = 2;
	if (rows.size() > 2 && rows[2] == "anchor,near,far") first = 3;
	const std::uint64_t m = set.items();
	for (std::size_t r = first; r < rows.size(); ++r) {
		const auto f = splitCsvLine(rows[r]);
		if (f.size() != 3) throw FormatError("constraint row " + std::to_string(r) + " needs three fields");
		const std::uint64_t a = parseUnsigned(f[0]), b = parseUnsigned(f[1]), c = parseUnsigned(f[2]);
		if (a >= m || b >= m || c >= m) throw ShapeError("constraint row " + std::to_string(r) + " indexes past the item count");
		if (a == b || a == c || b == c) throw FormatError("constraint row " + std::to_string(r) + " repeats an item");
		set.constraints.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)});
	}
	return set;
}

std::string gramToCsv(const GramMatrix& gram) {
	std::string out;
	for (Eigen::Index i = 0; i < gram.entries.rows(); ++i) appendRow(out, gram.entries.row(i));
	return out;
}

Eigen::MatrixXd matrixFromCsv(std::string_view text) {
	const auto rows = lines(text);
	if (rows.empty()) return {};
	const std::size_t width = splitCsvLine(rows[0]).size();
	Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
	for (std::size_t i = 0; i < rows.size(); ++i) {
		const auto f = splitCsvLine(rows[i]);
		if (f.size() != width) throw FormatError("ragged matrix row " + std::to_string(i));
		for (std::size_t j = 0; j < width; ++j)
			out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parseDouble(f[j]);
	}
	return out;
}

std::string diagnosticsToJson(const SolverDiagnostics& diagnostics) {
	nlohmann::ordered_json j;
	j["initial_objective"] = diagnostics.initial_objective;
	j["final_objective"] = diagnostics.final_objective;
	j["iterations"] = diagnostics.iterations;
	j["satisfied_fraction"] = diagnostics.satisfied_fraction;
	return j.dump(2) + "\n";
}

} // namespace labelbits
