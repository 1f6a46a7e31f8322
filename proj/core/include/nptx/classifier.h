#pragma once

#include <cstdint>
#include <vector>

#include "nptx/distributions.h"

namespace nptx {

struct RiskPair {
    double type1 = 0.0;  // mass of the acceptance region under the null
    double type2 = 0.0;  // mass of the rejection region under the alternative
};

// Membership test. Interval ends are closed.
bool evaluate(const Classifier& h, double x);
bool evaluate(const Classifier& h, std::int32_t atom_index);

// Sort parts, check disjointness, merge touching or overlapping intervals,
// drop empties. Throws ConfigError on NaN or inverted endpoints.
IntervalUnion canonicalize(IntervalUnion u);

// Complement of an interval union within (-inf, inf).
IntervalUnion complement(const IntervalUnion& u);

// Intersection of two canonical interval unions.
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);

// Population risks of h against a null/alternative pair.
RiskPair true_risks(const Classifier& h, const Distribution& mu0, const Distribution& mu1);

// Empirical risks on samples (continuous domain).
RiskPair empirical_risks(const Classifier& h, const std::vector<double>& s0,
                         const std::vector<double>& s1);

// Empirical risks on atom-index samples (discrete domain).
RiskPair empirical_risks(const Classifier& h, const std::vector<std::int32_t>& s0,
                         const std::vector<std::int32_t>& s1);

}  // namespace nptx
