#include <labelbits/costbenefit.hpp>
#include <labelbits/errors.hpp>

#include <cmath>
#include <string>

namespace labelbits {

std::string_view toString(UtilityKind kind) {
	return kind == UtilityKind::Linear ? "linear" : "sigmoid";
}

UtilityKind utilityKindFromString(std::string_view name) {
	if (name == "linear") return UtilityKind::Linear;
	if (name == "sigmoid") return UtilityKind::Sigmoid;
	throw FormatError("unknown utility kind '" + std::string(name) + "'");
}

double cost(LabelKind kind, int n, int k, int k_hat) {
	if (n < 1 || k < 1) throw ParameterError("cost needs positive n and k");
	switch (kind) {
	case LabelKind::Hard:
	case LabelKind::Smoothed:
		return 1.0;
	case LabelKind::Typicality:
		return 2.0;
	case LabelKind::Soft:
		return static_cast<double>(k);
	case LabelKind::SparseSoft:
	case LabelKind::TopClass:
	case LabelKind::PcaCoords:
		if (k_hat < 1) throw ParameterError("k_hat must be >= 1");
		if (kind != LabelKind::PcaCoords && k_hat > k) throw ParameterError("k_hat must not exceed k");
		return static_cast<double>(k_hat);
	}
	throw ParameterError("unknown label kind");
}

double utility(double rho, const TradeoffConfig& config) {
	if (config.utility == UtilityKind::Linear) return rho;
	return 1.0 / (1.0 + std::exp(-rho));
}

double loss(const SignalOption& option, const TradeoffConfig& config) {
	return config.beta * option.cost_units - utility(option.rho, config);
}

double indifferenceBeta(const SignalOption& a, const SignalOption& b, UtilityKind kind) {
	if (a.cost_units == b.cost_units) throw DegenerateInputError("options with equal cost have no indifference point");
	const TradeoffConfig cfg{0.0, kind};
	return (utility(a.rho, cfg) - utility(b.rho, cfg)) / (a.cost_units - b.cost_units);
}

const SignalOption& optimizeSparsity(const std::vector<SignalOption>& options,
	const TradeoffConfig& config) {
	if (options.empty()) throw InsufficientDataError("no signal options to choose from");
	if (config.beta < 0.0) throw ParameterError("beta must be >= 0");
	const SignalOption* best = &options.front();
	double bestLoss = loss(*best, config);
	for (const auto& opt : options) {
		const double l = loss(opt, config);
		const bool better = l < bestLoss ||
			(l == bestLoss && (opt.cost_units < best->cost_units ||
				(opt.cost_units == best->cost_units && opt.k_hat < best->k_hat)));
		if (better) {
			best = &opt;
			bestLoss = l;
		}
	}
	return *best;
}

} // namespace labelbits
