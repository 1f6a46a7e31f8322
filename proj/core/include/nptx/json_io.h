#pragma once

#include <string>

#include "nptx/exponent.h"
#include "nptx/harness.h"
#include "nptx/lowerbound.h"
#include "nptx/np_oracle.h"

namespace nptx {

// File helpers; both throw ConfigError on IO failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

// Laws are tagged objects: {"kind": "gaussian", "mean": .., "variance": ..},
// {"kind": "uniform", "lo": .., "hi": ..}, {"kind": "power", "rho": ..},
// {"kind": "triangular"}, {"kind": "mixture", "weights": [..], "components": [..]},
// {"kind": "discrete", "points": [..], "masses": [..]}.
// Classifiers: {"kind": "intervals", "parts": [[lo, hi], ..]} with infinite
// endpoints written as the strings "inf" / "-inf", or
// {"kind": "labels", "points": [..], "labels": [0/1, ..]}.
// Classes: {"kind": "thresholds", "lo": .., "hi": ..},
// {"kind": "interval_pair", "t0": .., "t1": ..},
// {"kind": "labelings", "points": [..], "forced_ones": [..], "forced_zeros": [..]},
// {"kind": "explicit", "items": [..], "vc_dim": ..}.
std::string to_json_string(const Distribution& d);
std::string to_json_string(const Classifier& h);
std::string to_json_string(const HypothesisClass& cls);
std::string to_json_string(const TransferScenario& sc);

Distribution distribution_from_json(const std::string& text);
Classifier classifier_from_json(const std::string& text);
HypothesisClass class_from_json(const std::string& text);

// Scenario object: {"id", "mu0", "mu1s", "mu1t", "alpha", "class", "slack_r"?}.
TransferScenario scenario_from_json(const std::string& text);

// {"c"?, "delta"?, "delta0"?} on top of the defaults.
AdaptiveConfig adaptive_config_from_json(const std::string& text);

// {"scenario", "n0_grid", "ns_grid", "nt_grid", "replicates"?, "base_seed"?,
//  "adaptive"?, "jobs"?}.
SweepConfig sweep_config_from_json(const std::string& text);

struct LowerBoundRequest {
    HardVariant variant = HardVariant::c1;
    int d_h = 0;
    double alpha = 0.0;
    double rho = 1.0;
    double c1 = 0.0;
    double delta_cap = 0.0;
    std::int64_t n_s = 0;
    std::int64_t n_t = 0;
};

// {"variant": "c1"|"c2"|"c3", "d_h", "alpha", "rho", "n_s", "n_t", "c1",
//  "delta_cap"?}.
LowerBoundRequest lowerbound_request_from_json(const std::string& text);

// Result payloads.
std::string to_json_string(const NPSolution& sol);
std::string to_json_string(const EquivalenceReport& rep);
std::string exponent_report_json(const ExponentContext& ctx, const ExponentFit& fit);
std::string family_report_json(const HardFamily& fam, const VerificationReport& rep);
std::string to_json_string(const RateFit& fit);

}  // namespace nptx
