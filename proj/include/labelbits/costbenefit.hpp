/// @file  costbenefit.hpp
/// @brief Annotation cost against recovery utility.

#pragma once

#include <labelbits/labels.hpp>

#include <string_view>
#include <vector>

namespace labelbits {

enum class UtilityKind { Linear, Sigmoid };

std::string_view toString(UtilityKind kind);
UtilityKind utilityKindFromString(std::string_view name);

struct TradeoffConfig {
	double beta = 0.0;  ///< cost weight in units of utility per hard label
	UtilityKind utility = UtilityKind::Linear;
};

struct SignalOption {
	LabelKind kind = LabelKind::Hard;
	int k_hat = 1;
	double rho = 0.0;
	double cost_units = 1.0;  ///< per-point cost in hard-label units
};

/// Per-point cost in hard-label units: hard and smoothed 1, typicality 2,
/// dense soft k, sparse / top-class / PCA coordinates k_hat.
double cost(LabelKind kind, int n, int k, int k_hat);

/// Linear: rho. Sigmoid: 1 / (1 + e^-rho).
double utility(double rho, const TradeoffConfig& config);

/// beta * cost - utility(rho).
double loss(const SignalOption& option, const TradeoffConfig& config);

/// beta at which two options with different costs have equal loss.
double indifferenceBeta(const SignalOption& a, const SignalOption& b, UtilityKind utility);

/// Minimal-loss option; ties go to lower cost, then lower k_hat.
const SignalOption& optimizeSparsity(const std::vector<SignalOption>& options,
	const TradeoffConfig& config);

} // namespace labelbits
