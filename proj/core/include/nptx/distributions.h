#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "nptx/rng.h"

namespace nptx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Gaussian {
    double mean = 0.0;
    double variance = 1.0;
};

// Uniform density on [lo, hi].
struct Uniform {
    double lo = 0.0;
    double hi = 1.0;
};

// Density rho * x^(rho-1) on [0, 1], rho >= 1.
struct PowerLaw {
    double rho = 1.0;
};

// Tent density on [-2, 2]: (x/4 + 1/2) on [-2, 0], (-x/4 + 1/2) on (0, 2].
struct Triangular {};

struct Distribution;

// Convex combination of other laws. Weights sum to 1.
struct Mixture {
    std::vector<double> weights;
    std::vector<Distribution> components;
};

// Finitely supported law on named atoms. Atom order is the canonical
// order for the scenario; all laws sharing a domain list atoms in the
// same order.
struct DiscreteOnPoints {
    std::vector<std::string> points;
    std::vector<double> masses;
};

struct Distribution {
    std::variant<Gaussian, Uniform, PowerLaw, Triangular, Mixture, DiscreteOnPoints> law;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;  // closed on both ends; +-inf allowed
};

// Acceptance region on the line: disjoint closed intervals, sorted.
struct IntervalUnion {
    std::vector<Interval> parts;
};

// Acceptance labels over the atoms of a discrete domain, aligned with the
// canonical atom order.
struct DiscreteLabeling {
    std::vector<std::string> points;
    std::vector<std::uint8_t> labels;
};

using Classifier = std::variant<IntervalUnion, DiscreteLabeling>;

bool is_discrete(const Distribution& d);

// Throws ConfigError on invalid parameters (mass not summing to 1,
// nonpositive variance, empty support, rho < 1, ...).
void validate(const Distribution& d);

// Density at x for continuous laws; throws DomainMismatchError on discrete.
double density(const Distribution& d, double x);

// Atom mass by id; throws DomainMismatchError on continuous laws or
// unknown ids.
double mass(const Distribution& d, const std::string& id);

// P(X <= x) for continuous laws.
double cdf(const Distribution& d, double x);

// Mass of a closed interval [lo, hi] (continuous laws).
double measure_interval(const Distribution& d, double lo, double hi);

// Mass of an acceptance region. Classifier kind must match the law kind.
double measure_of_region(const Distribution& d, const Classifier& h);

// Smallest closed interval carrying all mass; (-inf, inf) for Gaussians.
Interval support(const Distribution& d);

// Breakpoints of the piecewise-analytic density, inside finite support.
// Used to partition the line into cells where density ratios are smooth.
std::vector<double> density_knots(const Distribution& d);

// n i.i.d. draws from a continuous law via inverse-CDF on counter-based
// uniforms; deterministic given the generator state.
std::vector<double> sample_real(const Distribution& d, SplitRng& rng, std::size_t n);

// n i.i.d. draws from a discrete law, as indices into its atom list.
std::vector<std::int32_t> sample_atoms(const Distribution& d, SplitRng& rng, std::size_t n);

// KL divergence D(p || q) in nats; defined for discrete laws on the same
// atom list. +inf when p puts mass where q does not.
double kl_divergence(const Distribution& p, const Distribution& q);

// Quantile function of a continuous law (u in (0,1)).
double quantile(const Distribution& d, double u);

}  // namespace nptx
