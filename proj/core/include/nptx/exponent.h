#pragma once

#include <vector>

#include "nptx/scenario.h"

namespace nptx {

// Least Type-II risk attainable within cls at Type-I level alpha.
// Thresholds are solved by bisection on the null budget, two-interval
// families by a dense parameter grid, finite classes by enumeration.
// Throws InfeasibleError when no member meets the level.
double class_optimal_risk(const Distribution& mu0, const Distribution& mu1, double alpha,
                          const HypothesisClass& cls);

// Among the class members solving the source problem at level alpha, the
// one with the largest target Type-II risk.
Classifier worst_source_solution(const TransferScenario& sc);

// Anchors shared by every excess computation on one scenario.
struct ExponentContext {
    TransferScenario sc;
    Classifier source_worst;
    double source_opt_risk = 0.0;    // source Type-II of any source solution
    double target_anchor_risk = 0.0; // target Type-II of source_worst
    double target_opt_risk = 0.0;    // best target Type-II within the class
    double delta = 0.0;              // target_anchor_risk - target_opt_risk, clamped at 0
};

ExponentContext make_exponent_context(const TransferScenario& sc);

struct ExcessPair {
    double source = 0.0;
    double target = 0.0;
};

// Clamped excess risks of h relative to the scenario's anchors. Throws
// OutOfSlackError when Type-I of h exceeds alpha + slack_r.
ExcessPair excess_pair(const ExponentContext& ctx, const Classifier& h);

struct ExponentFit {
    double rho_hat = 1.0;
    double c_hat = 1.0;
    std::size_t n_pairs = 0;
};

// Smallest rho in [1, 64] whose constant max_i target_i^rho / source_i
// drops to 1; failing that, the smallest rho reaching a constant of 1e6;
// failing that (or when a positive target excess has zero source excess),
// +inf. Pairs with negligible target excess carry no constraint and are
// dropped; with nothing left the fit is the vacuous (1, 1).
ExponentFit fit_exponent(const std::vector<ExcessPair>& pairs);

// Class members whose Type-I risk stays within alpha + slack_r: evenly
// spaced parameter grids (plus law knots) for threshold and two-interval
// families, full enumeration for labeling classes, the listed items for
// explicit classes.
std::vector<Classifier> exponent_grid(const ExponentContext& ctx, int per_param = 512);

// Grid excesses in one call.
ExponentFit fit_exponent(const TransferScenario& sc, int per_param = 512);

}  // namespace nptx
