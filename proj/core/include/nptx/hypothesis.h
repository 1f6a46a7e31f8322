#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nptx/classifier.h"

namespace nptx {

// One-sided thresholds on a segment: { 1_{t <= x <= hi} : t in [lo, hi] }.
struct ThresholdOnSegment {
    double lo = 0.0;
    double hi = 1.0;
};

// Two-interval family { 1_{[a,1] u [b,t0]} : a in [t0,1], b in [t1,t0] }.
struct IntervalUnionPair {
    double t0 = 0.0;
    double t1 = 0.0;
};

// Every labeling of a finite point set, with some labels pinned.
struct AllLabelings {
    std::vector<std::string> points;
    std::vector<std::string> forced_ones;
    std::vector<std::string> forced_zeros;
};

// An explicit finite list of classifiers.
struct ExplicitList {
    std::vector<Classifier> items;
};

struct HypothesisClass {
    std::variant<ThresholdOnSegment, IntervalUnionPair, AllLabelings, ExplicitList> family;
    int vc_dim = 0;
};

// Factories; validate parameters and fill in the VC dimension
// (thresholds: 1, pair family: 2, labelings: free point count,
// explicit lists: declared by the caller).
HypothesisClass make_threshold_class(double lo, double hi);
HypothesisClass make_interval_pair_class(double t0, double t1);
HypothesisClass make_all_labelings(std::vector<std::string> points,
                                   std::vector<std::string> forced_ones,
                                   std::vector<std::string> forced_zeros);
HypothesisClass make_explicit(std::vector<Classifier> items, int vc_dim);

// The acceptance region of one member.
Classifier threshold_member(const ThresholdOnSegment& c, double t);
Classifier interval_pair_member(const IntervalUnionPair& c, double a, double b);

// Restrict a parametric class to the finitely many members that are
// distinguishable on the given breakpoints (sample values and law knots).
// Candidate parameters are the breakpoints themselves plus the segment
// ends; every sample-distinguishable member is represented.
ExplicitList finite_reduction(const HypothesisClass& cls,
                              const std::vector<double>& breakpoints);

// All members of an AllLabelings class, in lexicographic label order
// (free points cycle fastest on the rightmost atom). Throws
// UnsupportedError beyond 24 free points.
std::vector<DiscreteLabeling> enumerate_labelings(const AllLabelings& c);

bool is_discrete_class(const HypothesisClass& cls);

}  // namespace nptx
