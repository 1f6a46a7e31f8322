#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nptx/hypothesis.h"

namespace nptx {

// Contamination-sample slack: the Type-I budget used by constrained fits is
// alpha + epsilon0/2 where epsilon0 = sqrt(128 (d ln n0 + ln(8/delta0)) / n0).
// Requires n0 >= 2, d >= 1, delta0 in (0,1).
double epsilon0_of(std::int64_t n0, int d, double delta0);

struct ErmConfig {
    double alpha = 0.0;
    double epsilon0 = 0.0;  // total budget is alpha + epsilon0/2
};

// Empirical Type-I budget check: count/n0 <= alpha + epsilon0/2 (+1e-12 guard).
bool within_budget(std::int64_t count, std::int64_t n0, const ErmConfig& cfg);

// Minimises the empirical miss rate on s1 subject to the empirical false-alarm
// budget on s0.  Ties resolve lexicographically: fewer false alarms first, then
// the smallest parameter vector (thresholds: smallest t; interval pairs:
// smallest (a, b); labelings: first in enumeration order).  Returns nullopt
// when no member of the class meets the budget.
std::optional<Classifier> constrained_erm(const HypothesisClass& cls,
                                          const std::vector<double>& s0,
                                          const std::vector<double>& s1,
                                          const ErmConfig& cfg);

// Same contract over atom-indexed samples.
std::optional<Classifier> constrained_erm(const HypothesisClass& cls,
                                          const std::vector<std::int32_t>& s0,
                                          const std::vector<std::int32_t>& s1,
                                          const ErmConfig& cfg);

}  // namespace nptx
