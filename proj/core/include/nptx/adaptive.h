#pragma once

#include <cstdint>
#include <string>

#include "nptx/rng.h"
#include "nptx/scenario.h"

namespace nptx {

// VC-type estimation error at sample size n: (d/n) ln(max(n,d)/d) + (1/n) ln(1/delta).
double complexity_term(std::int64_t n, int d, double delta);

struct AdaptiveConfig {
    double c = 1.0;       // selection margin multiplier
    double delta = 0.05;  // confidence split for the complexity terms
    double delta0 = 0.05; // confidence split for the contamination budget
};

struct SelectResult {
    Classifier h;
    bool chose_source = false;
    double margin = 0.0;  // empirical target gap minus c * sqrt(complexity)
};

// Keeps the source-trained classifier unless its empirical target miss rate
// beats the target-trained one by more than c * sqrt(A_{n_T}).
SelectResult adaptive_select(const Classifier& h_source, const Classifier& h_target,
                             const std::vector<double>& target_sample, int d,
                             const AdaptiveConfig& cfg);
SelectResult adaptive_select(const Classifier& h_source, const Classifier& h_target,
                             const std::vector<std::int32_t>& target_sample, int d,
                             const AdaptiveConfig& cfg);

struct TrialResult {
    std::string scenario;
    std::int64_t n0 = 0;
    std::int64_t n_s = 0;
    std::int64_t n_t = 0;
    std::uint64_t seed = 0;
    int chose_source = 0;
    double excess_target = 0.0;
    double type1_true = 0.0;
    double type1_emp = 0.0;
    double epsilon0 = 0.0;
    double a_ns = 0.0;
    double a_nt = 0.0;
    double margin = 0.0;
    std::string status = "ok";
};

// One full simulated trial: draw the three samples, fit both constrained
// classifiers, select, and score the pick against the class-level target
// optimum (computed internally unless the caller passes it in).
// Degenerate budgets run single-sided: n_s == 0 forces the target fit,
// n_t == 0 the source fit; margin and the missing complexity term are NaN.
// A trial whose constrained fit finds no feasible member reports
// status "infeasible" with NaN risk columns.
TrialResult run_adaptive(const TransferScenario& sc, std::int64_t n0, std::int64_t n_s,
                         std::int64_t n_t, const AdaptiveConfig& cfg, SplitRng rng,
                         const double* target_opt_risk = nullptr);

}  // namespace nptx
