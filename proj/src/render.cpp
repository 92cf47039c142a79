#include <labelbits/render.hpp>
#include <labelbits/errors.hpp>
#include <labelbits/io.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <tuple>

namespace labelbits {

namespace {

std::string fixed(double v, int digits = 3) {
	char buf[64];
	std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
	return buf;
}

std::string escape(std::string_view text) {
	std::string out;
	for (char c : text) {
		switch (c) {
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '&': out += "&amp;"; break;
		default: out += c;
		}
	}
	return out;
}

class Svg {
public:
	Svg(double width, double height) : width_(width), height_(height) {}

	void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none") {
		body_ += "<rect x=\"" + fixed(x, 1) + "\" y=\"" + fixed(y, 1) + "\" width=\"" + fixed(w, 1) +
			"\" height=\"" + fixed(h, 1) + "\" fill=\"" + std::string(fill) + "\" stroke=\"" +
			std::string(stroke) + "\"/>\n";
	}
	void text(double x, double y, std::string_view content, int size = 11, std::string_view anchor = "middle") {
		body_ += "<text x=\"" + fixed(x, 1) + "\" y=\"" + fixed(y, 1) + "\" font-size=\"" + std::to_string(size) +
			"\" font-family=\"sans-serif\" text-anchor=\"" + std::string(anchor) + "\">" + escape(content) + "</text>\n";
	}
	void line(double x1, double y1, double x2, double y2, std::string_view stroke, bool dashed = false) {
		body_ += "<line x1=\"" + fixed(x1, 1) + "\" y1=\"" + fixed(y1, 1) + "\" x2=\"" + fixed(x2, 1) + "\" y2=\"" +
			fixed(y2, 1) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\"" +
			(dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
	}
	void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke) {
		if (pts.empty()) return;
		body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\" points=\"";
		for (const auto& [x, y] : pts) body_ += fixed(x, 1) + "," + fixed(y, 1) + " ";
		body_ += "\"/>\n";
	}
	void circle(double x, double y, double r, std::string_view fill) {
		body_ += "<circle cx=\"" + fixed(x, 1) + "\" cy=\"" + fixed(y, 1) + "\" r=\"" + fixed(r, 1) +
			"\" fill=\"" + std::string(fill) + "\"/>\n";
	}
	std::string str() const {
		return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width_, 0) + "\" height=\"" +
			fixed(height_, 0) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
	}

private:
	double width_, height_;
	std::string body_;
};

constexpr std::string_view kHardColor = "#2ca02c";
constexpr std::string_view kSoftColor = "#2ca02c";
constexpr std::string_view kSparseColor = "#7b3fa0";
constexpr std::string_view kTopColor = "#d62728";
constexpr std::string_view kPcaColor = "#1f77b4";

std::string_view curveColor(LabelKind kind) {
	switch (kind) {
	case LabelKind::SparseSoft: return kSparseColor;
	case LabelKind::TopClass: return kTopColor;
	case LabelKind::PcaCoords: return kPcaColor;
	default: return kSoftColor;
	}
}

double metricValue(const SweepRow& r, std::string_view metric) {
	if (metric == "rho") return r.rho;
	if (metric == "ir") return r.ir;
	if (metric == "satisfied_fraction") return r.satisfied_fraction;
	if (metric == "c_hat") return r.c_hat;
	if (metric == "loss") return r.loss;
	if (metric == "constraint_count") return static_cast<double>(r.constraint_count);
	throw UsageError("unknown metric column '" + std::string(metric) + "'");
}

std::string facetValue(const SweepRow& r, std::string_view facet) {
	if (facet == "kind") return std::string(toString(r.kind));
	if (facet == "d") return std::to_string(r.d);
	if (facet == "epsilon") return formatDouble(r.epsilon);
	if (facet == "k_hat") return std::to_string(r.k_hat);
	if (facet == "signal") return std::string(toString(r.kind)) + ":" + std::to_string(r.k_hat);
	throw UsageError("unknown facet column '" + std::string(facet) + "'");
}

std::vector<std::pair<int, int>> cells(const SweepResult& result) {
	std::set<std::pair<int, int>> seen;
	for (const auto& r : result.rows) seen.insert({r.n, r.k});
	return {seen.begin(), seen.end()};
}

/// Mean rho per (kind, k_hat) within one (n, k) cell.
std::map<std::pair<LabelKind, int>, std::pair<double, std::size_t>> meanRho(const SweepResult& result, int n, int k) {
	std::map<std::pair<LabelKind, int>, std::pair<double, std::size_t>> acc;
	for (const auto& r : result.rows) {
		if (r.n != n || r.k != k || !r.ok() || !std::isfinite(r.rho)) continue;
		auto& [sum, count] = acc[{r.kind, r.k_hat}];
		sum += r.rho;
		++count;
	}
	for (auto& [key, v] : acc) v.first /= static_cast<double>(v.second);
	return acc;
}

struct Frame {
	double x0, y0, w, h;
	double xmin, xmax, ymin, ymax;

	double x(double v) const { return xmax > xmin ? x0 + (v - xmin) / (xmax - xmin) * w : x0 + 0.5 * w; }
	double y(double v) const { return ymax > ymin ? y0 + h - (v - ymin) / (ymax - ymin) * h : y0 + 0.5 * h; }
};

void drawAxes(Svg& svg, const Frame& f, std::string_view xlabel, std::string_view ylabel) {
	svg.rect(f.x0, f.y0, f.w, f.h, "none", "#888888");
	svg.text(f.x0 + f.w / 2, f.y0 + f.h + 28, xlabel, 10);
	svg.text(f.x0 - 6, f.y0 + 4, fixed(f.ymax), 9, "end");
	svg.text(f.x0 - 6, f.y0 + f.h, fixed(f.ymin), 9, "end");
	svg.text(f.x0, f.y0 + f.h + 14, fixed(f.xmin, 0), 9);
	svg.text(f.x0 + f.w, f.y0 + f.h + 14, fixed(f.xmax, 0), 9);
	svg.text(f.x0 - 6, f.y0 + f.h / 2, ylabel, 10, "end");
}

} // namespace

std::string heatColor(double t) {
	// Five-stop approximation of a perceptual blue-green-yellow ramp.
	static const double stops[5][3] = {
		{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
	t = std::clamp(std::isfinite(t) ? t : 0.5, 0.0, 1.0);
	const double pos = t * 4.0;
	const int i = std::min(3, static_cast<int>(pos));
	const double f = pos - i;
	char buf[8];
	std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
		static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
		static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
		static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
	return buf;
}

std::vector<PivotCell> pivot(const SweepResult& result, std::string_view metric, std::string_view facet) {
	SweepRow probe;
	metricValue(probe, metric);
	facetValue(probe, facet);

	std::vector<std::string> facetOrder;
	std::map<std::tuple<std::size_t, int, int>, std::pair<double, std::size_t>> acc;
	for (const auto& r : result.rows) {
		const std::string fv = facetValue(r, facet);
		auto it = std::find(facetOrder.begin(), facetOrder.end(), fv);
		const auto fi = static_cast<std::size_t>(it - facetOrder.begin());
		if (it == facetOrder.end()) facetOrder.push_back(fv);
		const double v = metricValue(r, metric);
		if (!r.ok() || !std::isfinite(v)) continue;
		auto& [sum, count] = acc[{fi, r.n, r.k}];
		sum += v;
		++count;
	}
	std::vector<PivotCell> out;
	for (const auto& [key, v] : acc) {
		const auto& [fi, n, k] = key;
		out.push_back({facetOrder[fi], n, k, v.first / static_cast<double>(v.second), v.second});
	}
	return out;
}

Rendered renderHeatmap(const SweepResult& result, std::string_view metric, std::string_view facet) {
	const std::vector<PivotCell> cellsOut = pivot(result, metric, facet);

	Rendered out;
	out.csv = "facet,n,k,value,count\n";
	for (const auto& c : cellsOut) {
		out.csv += c.facet + ',' + std::to_string(c.n) + ',' + std::to_string(c.k) + ',' +
			formatDouble(c.value) + ',' + std::to_string(c.count) + '\n';
	}

	std::vector<std::string> facets;
	std::set<int> ns, ks;
	double lo = INFINITY, hi = -INFINITY;
	for (const auto& c : cellsOut) {
		if (std::find(facets.begin(), facets.end(), c.facet) == facets.end()) facets.push_back(c.facet);
		ns.insert(c.n);
		ks.insert(c.k);
		lo = std::min(lo, c.value);
		hi = std::max(hi, c.value);
	}
	const std::vector<int> nv(ns.begin(), ns.end()), kv(ks.begin(), ks.end());
	const double cell = 48.0, left = 50.0, top = 40.0, gap = 40.0;
	const double panelW = cell * static_cast<double>(kv.size());
	const double panelH = cell * static_cast<double>(nv.size());
	Svg svg(left + static_cast<double>(facets.size()) * (panelW + gap) + 20.0, top + panelH + 80.0);

	for (std::size_t p = 0; p < facets.size(); ++p) {
		const double x0 = left + static_cast<double>(p) * (panelW + gap);
		svg.text(x0 + panelW / 2, top - 22, std::string(facet) + " = " + facets[p], 12);
		for (std::size_t j = 0; j < kv.size(); ++j) svg.text(x0 + cell * (static_cast<double>(j) + 0.5), top - 6, "k=" + std::to_string(kv[j]), 9);
		for (std::size_t i = 0; i < nv.size(); ++i) svg.text(x0 - 4, top + cell * (static_cast<double>(i) + 0.55), "n=" + std::to_string(nv[i]), 9, "end");
		for (const auto& c : cellsOut) {
			if (c.facet != facets[p]) continue;
			const auto i = static_cast<double>(std::find(nv.begin(), nv.end(), c.n) - nv.begin());
			const auto j = static_cast<double>(std::find(kv.begin(), kv.end(), c.k) - kv.begin());
			const double t = hi > lo ? (c.value - lo) / (hi - lo) : 0.5;
			svg.rect(x0 + j * cell, top + i * cell, cell, cell, heatColor(t), "white");
			svg.text(x0 + (j + 0.5) * cell, top + (i + 0.58) * cell, fixed(c.value), 10);
		}
	}
	if (!cellsOut.empty()) {
		const double y = top + panelH + 30;
		svg.text(left, y, std::string(metric) + " scale: min " + fixed(lo) + "  max " + fixed(hi), 11, "start");
		for (int s = 0; s < 20; ++s) svg.rect(left + s * 10.0, y + 8, 10, 12, heatColor(s / 19.0));
	}
	out.svg = svg.str();
	return out;
}

std::vector<SignalOption> signalOptions(const SweepResult& result, int n, int k) {
	std::vector<SignalOption> options;
	for (const auto& [key, v] : meanRho(result, n, k)) {
		const auto& [kind, kHat] = key;
		if (kind != LabelKind::Hard && kind != LabelKind::Soft && kind != LabelKind::SparseSoft &&
			kind != LabelKind::TopClass) {
			continue;
		}
		options.push_back({kind, kHat, v.first, cost(kind, n, k, kHat)});
	}
	return options;
}

Rendered renderTradeoff(const SweepResult& result, const std::vector<double>& beta_grid, UtilityKind utility) {
	if (beta_grid.empty()) throw UsageError("tradeoff rendering needs at least one beta");
	bool sparsity = false;
	for (const auto& r : result.rows)
		sparsity = sparsity || r.kind == LabelKind::SparseSoft || r.kind == LabelKind::TopClass;
	if (!sparsity) throw UsageError("tradeoff rendering needs sparse or top-class rows in the sweep");

	Rendered out;
	out.csv = "n,k,kind,k_hat,rho,c_hat,beta,utility_kind,loss,preferred\n";
	const auto grid = cells(result);
	const std::size_t columns = std::min<std::size_t>(beta_grid.size(), 6);
	const std::size_t panels = grid.size() * beta_grid.size();
	const std::size_t rowsOfPanels = (panels + columns - 1) / columns;
	const double pw = 200, ph = 140, mx = 70, my = 60;
	Svg svg(static_cast<double>(columns) * (pw + mx) + mx, static_cast<double>(rowsOfPanels) * (ph + my) + my);

	std::size_t panel = 0;
	for (const auto& [n, k] : grid) {
		const auto options = signalOptions(result, n, k);
		if (options.empty()) continue;
		for (double beta : beta_grid) {
			const TradeoffConfig cfg{beta, utility};
			const SignalOption& best = optimizeSparsity(options, cfg);
			double lo = INFINITY, hi = -INFINITY;
			for (const auto& o : options) {
				const double l = loss(o, cfg);
				lo = std::min(lo, l);
				hi = std::max(hi, l);
				out.csv += std::to_string(n) + ',' + std::to_string(k) + ',' + std::string(toString(o.kind)) + ',' +
					std::to_string(o.k_hat) + ',' + formatDouble(o.rho) + ',' + formatDouble(o.cost_units) + ',' +
					formatDouble(beta) + ',' + std::string(toString(utility)) + ',' + formatDouble(l) + ',' +
					(&o == &best ? "1" : "0") + '\n';
			}

			const double x0 = mx + static_cast<double>(panel % columns) * (pw + mx);
			const double y0 = my + static_cast<double>(panel / columns) * (ph + my);
			const Frame f{x0, y0, pw, ph, 1.0, static_cast<double>(k), lo, hi};
			svg.text(x0 + pw / 2, y0 - 8, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " beta=" + fixed(beta, 4), 10);
			drawAxes(svg, f, "k_hat", "loss");
			for (LabelKind kind : {LabelKind::SparseSoft, LabelKind::TopClass}) {
				std::vector<std::pair<double, double>> pts;
				for (const auto& o : options)
					if (o.kind == kind) pts.emplace_back(f.x(o.k_hat), f.y(loss(o, cfg)));
				svg.polyline(pts, curveColor(kind));
			}
			for (const auto& o : options) {
				if (o.kind == LabelKind::Soft) svg.line(x0, f.y(loss(o, cfg)), x0 + pw, f.y(loss(o, cfg)), kSoftColor);
				if (o.kind == LabelKind::Hard) svg.line(x0, f.y(loss(o, cfg)), x0 + pw, f.y(loss(o, cfg)), kHardColor, true);
			}
			svg.circle(f.x(best.k_hat), f.y(loss(best, cfg)), 4, "black");
			svg.text(x0 + pw, y0 + ph + 28, "min: " + std::string(toString(best.kind)) + " k_hat=" + std::to_string(best.k_hat), 9, "end");
			++panel;
		}
	}
	out.svg = svg.str();
	return out;
}

Rendered renderSparsity(const SweepResult& result) {
	Rendered out;
	out.csv = "n,k,kind,k_hat,rho,count\n";
	const auto grid = cells(result);
	const std::size_t columns = std::min<std::size_t>(std::max<std::size_t>(grid.size(), 1), 4);
	const std::size_t rowsOfPanels = (grid.size() + columns - 1) / columns;
	const double pw = 220, ph = 160, mx = 70, my = 60;
	Svg svg(static_cast<double>(columns) * (pw + mx) + mx, static_cast<double>(rowsOfPanels) * (ph + my) + my);

	std::size_t panel = 0;
	for (const auto& [n, k] : grid) {
		const auto means = meanRho(result, n, k);
		double lo = INFINITY, hi = -INFINITY;
		int xmax = 1;
		for (const auto& [key, v] : means) {
			out.csv += std::to_string(n) + ',' + std::to_string(k) + ',' + std::string(toString(key.first)) + ',' +
				std::to_string(key.second) + ',' + formatDouble(v.first) + ',' + std::to_string(v.second) + '\n';
			lo = std::min(lo, v.first);
			hi = std::max(hi, v.first);
			xmax = std::max(xmax, key.second);
		}
		if (means.empty()) continue;
		const double x0 = mx + static_cast<double>(panel % columns) * (pw + mx);
		const double y0 = my + static_cast<double>(panel / columns) * (ph + my);
		const Frame f{x0, y0, pw, ph, 1.0, static_cast<double>(xmax), lo, hi};
		svg.text(x0 + pw / 2, y0 - 8, "n=" + std::to_string(n) + " k=" + std::to_string(k), 11);
		drawAxes(svg, f, "k_hat", "rho");
		for (LabelKind kind : {LabelKind::PcaCoords, LabelKind::SparseSoft, LabelKind::TopClass}) {
			std::vector<std::pair<double, double>> pts;
			for (const auto& [key, v] : means)
				if (key.first == kind) pts.emplace_back(f.x(key.second), f.y(v.first));
			svg.polyline(pts, curveColor(kind));
		}
		for (const auto& [key, v] : means) {
			if (key.first == LabelKind::Soft) svg.line(x0, f.y(v.first), x0 + pw, f.y(v.first), kSoftColor);
			if (key.first == LabelKind::Hard) svg.line(x0, f.y(v.first), x0 + pw, f.y(v.first), kHardColor, true);
		}
		++panel;
	}
	out.svg = svg.str();
	return out;
}

} // namespace labelbits
