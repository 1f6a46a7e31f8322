#include "nptx/np_oracle.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "nptx/errors.h"

namespace nptx {

namespace {

constexpr int kScanSubdivisions = 512;
constexpr double kMassTol = 1e-11;

bool unbounded(const Interval& s) { return s.lo == -kInf || s.hi == kInf; }

// Super-level set of a Gaussian/Gaussian log ratio: quadratic inequality
// a x^2 + b x + c >= log(lambda).
IntervalUnion gaussian_pair_level_set(const Gaussian& g0, const Gaussian& g1,
                                      double lambda) {
    if (lambda <= 0.0) return IntervalUnion{{{-kInf, kInf}}};
    const double v0 = g0.variance, v1 = g1.variance;
    const double a = 0.5 / v0 - 0.5 / v1;
    const double b = g1.mean / v1 - g0.mean / v0;
    const double c = 0.5 * g0.mean * g0.mean / v0 - 0.5 * g1.mean * g1.mean / v1 +
                     0.5 * std::log(v0 / v1);
    const double rhs = std::log(lambda);
    const double c0 = c - rhs;
    if (a == 0.0) {
        if (b == 0.0)
            return c0 >= 0.0 ? IntervalUnion{{{-kInf, kInf}}} : IntervalUnion{};
        const double x = -c0 / b;
        return b > 0.0 ? IntervalUnion{{{x, kInf}}} : IntervalUnion{{{-kInf, x}}};
    }
    const double disc = b * b - 4.0 * a * c0;
    if (disc <= 0.0) {
        // No strict sign change: the parabola stays on one side.
        return a > 0.0 ? IntervalUnion{{{-kInf, kInf}}} : IntervalUnion{};
    }
    const double sq = std::sqrt(disc);
    const double r1 = (-b - sq) / (2.0 * a), r2 = (-b + sq) / (2.0 * a);
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    if (a > 0.0) return IntervalUnion{{{-kInf, lo}, {hi, kInf}}};
    return IntervalUnion{{{lo, hi}}};
}

// Sign-scan f = p1 - lambda*p0 over [a, b]; appends subintervals with
// f >= 0 to out. The densities are smooth inside a knot cell, so roots
// are isolated except for exact-plateau cells (f identically 0), which
// come out fully included.
void scan_cell(const Distribution& mu0, const Distribution& mu1, double lambda, double a,
               double b, std::vector<Interval>& out) {
    if (!(b > a)) return;
    auto f = [&](double x) { return density(mu1, x) - lambda * density(mu0, x); };
    const double tol = 1e-14 * (1.0 + lambda);
    auto sgn = [&](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
    const int K = kScanSubdivisions;
    double open_at = 0.0;
    bool open = false;
    double prev_x = a;
    int prev_s = sgn(f(a));
    if (prev_s >= 0) {
        open = true;
        open_at = a;
    }
    for (int i = 1; i <= K; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / K;
        const int s = sgn(f(x));
        if (s >= 0 && !open) {
            // Entered the nonnegative set somewhere in (prev_x, x].
            double lo = prev_x, hi = x;
            if (prev_s < 0 && s > 0) {
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (f(mid) > 0.0)
                        hi = mid;
                    else
                        lo = mid;
                }
            }
            open = true;
            open_at = hi;
        } else if (s < 0 && open) {
            double lo = prev_x, hi = x;
            if (prev_s > 0) {
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (f(mid) > 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
            }
            out.push_back({open_at, lo});
            open = false;
        }
        prev_x = x;
        prev_s = s;
    }
    if (open) out.push_back({open_at, b});
}

IntervalUnion continuous_level_set(const Distribution& mu0, const Distribution& mu1,
                                   double lambda) {
    if (const auto* g0 = std::get_if<Gaussian>(&mu0.law))
        if (const auto* g1 = std::get_if<Gaussian>(&mu1.law))
            return gaussian_pair_level_set(*g0, *g1, lambda);
    if (lambda <= 0.0) return IntervalUnion{{{-kInf, kInf}}};

    const Interval s0 = support(mu0);
    const Interval s1 = support(mu1);
    std::vector<Interval> parts;
    double scan_lo, scan_hi;
    if (!unbounded(s0)) {
        // Everything outside the null support is in by convention.
        parts.push_back({-kInf, s0.lo});
        parts.push_back({s0.hi, kInf});
        scan_lo = s0.lo;
        scan_hi = s0.hi;
    } else if (!unbounded(s1)) {
        // p1 vanishes outside its support, so the level set lives inside it.
        scan_lo = s1.lo;
        scan_hi = s1.hi;
    } else {
        throw UnsupportedError(
            "level_set: unbounded non-Gaussian density ratio geometry");
    }

    std::vector<double> knots;
    for (const auto* d : {&mu0, &mu1}) {
        if (std::holds_alternative<Gaussian>(d->law)) continue;
        for (double k : density_knots(*d))
            if (k > scan_lo && k < scan_hi) knots.push_back(k);
    }
    knots.push_back(scan_lo);
    knots.push_back(scan_hi);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        scan_cell(mu0, mu1, lambda, knots[i], knots[i + 1], parts);
    return canonicalize(IntervalUnion{std::move(parts)});
}

struct RatioGroups {
    std::vector<double> values;             // finite ratio values, descending
    std::vector<double> group_mu0;          // mu0 mass per value group
    std::vector<std::uint8_t> inf_atoms;    // per-atom flag: zero-denominator
    std::vector<double> ratios;             // per-atom finite ratio (inf flagged)
};

RatioGroups ratio_groups(const DiscreteOnPoints& d0, const DiscreteOnPoints& d1) {
    if (d0.points != d1.points)
        throw DomainMismatchError("level_set: atom lists differ between laws");
    RatioGroups rg;
    const std::size_t n = d0.points.size();
    rg.inf_atoms.assign(n, 0);
    rg.ratios.assign(n, 0.0);
    std::map<double, double, std::greater<double>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        if (d0.masses[i] == 0.0) {
            rg.inf_atoms[i] = 1;
            continue;
        }
        const double r = d1.masses[i] / d0.masses[i];
        rg.ratios[i] = r;
        groups[r] += d0.masses[i];
    }
    for (const auto& [v, m] : groups) {
        rg.values.push_back(v);
        rg.group_mu0.push_back(m);
    }
    return rg;
}

DiscreteLabeling discrete_level_region(const DiscreteOnPoints& d0,
                                       const DiscreteOnPoints& d1, double lambda) {
    const RatioGroups rg = ratio_groups(d0, d1);
    DiscreteLabeling lab;
    lab.points = d0.points;
    lab.labels.assign(d0.points.size(), 0);
    for (std::size_t i = 0; i < d0.points.size(); ++i)
        lab.labels[i] = (rg.inf_atoms[i] || rg.ratios[i] >= lambda) ? 1 : 0;
    return lab;
}

}  // namespace

LevelSetResult level_set(const NPProblem& prob, double lambda) {
    if (lambda < 0.0) throw ConfigError("level_set: lambda must be nonnegative");
    LevelSetResult res;
    res.lambda = lambda;
    if (is_discrete(prob.mu0) != is_discrete(prob.mu1))
        throw DomainMismatchError("level_set: mixed discrete/continuous pair");
    if (is_discrete(prob.mu0)) {
        res.region = discrete_level_region(std::get<DiscreteOnPoints>(prob.mu0.law),
                                           std::get<DiscreteOnPoints>(prob.mu1.law), lambda);
    } else {
        res.region = continuous_level_set(prob.mu0, prob.mu1, lambda);
    }
    res.mu0_mass = measure_of_region(prob.mu0, res.region);
    return res;
}

std::optional<double> achievable_threshold(const NPProblem& prob) {
    const double alpha = prob.alpha;
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ConfigError("achievable_threshold: alpha must be in [0,1]");
    if (is_discrete(prob.mu0)) {
        const auto& d0 = std::get<DiscreteOnPoints>(prob.mu0.law);
        const auto& d1 = std::get<DiscreteOnPoints>(prob.mu1.law);
        const RatioGroups rg = ratio_groups(d0, d1);
        if (std::fabs(alpha) <= kMassTol)
            return rg.values.empty() ? 1.0 : rg.values.front() + 1.0;
        double cum = 0.0;
        for (std::size_t k = 0; k < rg.values.size(); ++k) {
            cum += rg.group_mu0[k];
            if (std::fabs(cum - alpha) <= kMassTol) return rg.values[k];
            if (cum > alpha) return std::nullopt;
        }
        return std::nullopt;  // alpha above total reachable mass (impossible for alpha<=1)
    }

    auto mass_at = [&](double lam) { return level_set(prob, lam).mu0_mass; };
    if (std::fabs(1.0 - alpha) <= kMassTol) return 0.0;
    double lo = 0.0, hi = 1.0;
    double mhi = mass_at(hi);
    while (mhi > alpha) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e18) return std::nullopt;
        mhi = mass_at(hi);
    }
    // Invariant: mass(lo) > alpha >= mass(hi); shrink to the crossover.
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mass_at(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    if (std::fabs(mass_at(hi) - alpha) <= kMassTol) return hi;
    if (std::fabs(mass_at(lo) - alpha) <= kMassTol) return lo;
    return std::nullopt;
}

NPSolution np_solution(const NPProblem& prob) {
    const auto lam = achievable_threshold(prob);
    if (!lam)
        throw NotAchievableError("np_solution: no level set attains the requested level");
    const LevelSetResult ls = level_set(prob, *lam);
    NPSolution sol;
    sol.lambda = *lam;
    sol.h = ls.region;
    sol.type1 = ls.mu0_mass;
    sol.type2 = 1.0 - measure_of_region(prob.mu1, ls.region);
    return sol;
}

std::vector<Classifier> brute_force_solutions(
    const NPProblem& prob, const HypothesisClass& cls, bool restrict_ustar,
    const std::vector<const Distribution*>& extra_mass) {
    std::vector<Classifier> members;
    if (const auto* al = std::get_if<AllLabelings>(&cls.family)) {
        for (auto& lab : enumerate_labelings(*al)) members.push_back(std::move(lab));
    } else if (const auto* ex = std::get_if<ExplicitList>(&cls.family)) {
        members = ex->items;
    } else {
        throw UnsupportedError("brute_force_solutions: class is not finite");
    }

    if (restrict_ustar) {
        if (!is_discrete(prob.mu0))
            throw UnsupportedError(
                "brute_force_solutions: ustar restriction needs a discrete domain");
        const auto& d0 = std::get<DiscreteOnPoints>(prob.mu0.law);
        std::vector<std::uint8_t> must_accept(d0.points.size(), 0);
        for (std::size_t i = 0; i < d0.points.size(); ++i) {
            if (d0.masses[i] != 0.0) continue;
            double pos = mass(prob.mu1, d0.points[i]);
            for (const auto* extra : extra_mass) pos += mass(*extra, d0.points[i]);
            if (pos > 0.0) must_accept[i] = 1;
        }
        std::erase_if(members, [&](const Classifier& h) {
            const auto& lab = std::get<DiscreteLabeling>(h);
            for (std::size_t i = 0; i < must_accept.size(); ++i)
                if (must_accept[i] && !lab.labels[i]) return true;
            return false;
        });
    }

    constexpr double eps = 1e-12;
    double best = kInf;
    for (const auto& h : members) {
        const RiskPair r = true_risks(h, prob.mu0, prob.mu1);
        if (r.type1 <= prob.alpha + eps) best = std::min(best, r.type2);
    }
    std::vector<Classifier> out;
    if (best == kInf) return out;
    for (const auto& h : members) {
        const RiskPair r = true_risks(h, prob.mu0, prob.mu1);
        if (r.type1 <= prob.alpha + eps && r.type2 <= best + eps) out.push_back(h);
    }
    return out;
}

namespace {

// Label vector with nu-null atoms forced to 0, for comparing solution sets
// that are only unique up to null sets.
std::vector<std::uint8_t> canonical_labels(const DiscreteLabeling& lab,
                                           const std::vector<double>& nu) {
    std::vector<std::uint8_t> v = lab.labels;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (nu[i] == 0.0) v[i] = 0;
    return v;
}

EquivalenceReport discrete_equivalence(const DiscreteOnPoints& d0,
                                       const DiscreteOnPoints& d1s,
                                       const DiscreteOnPoints& d1t, double alpha,
                                       bool restrict_ustar, const Distribution& mu0,
                                       const Distribution& mu1S,
                                       const Distribution& mu1T) {
    if (d0.points != d1s.points || d0.points != d1t.points)
        throw DomainMismatchError("check_equivalence: atom lists differ");
    std::vector<double> nu(d0.points.size());
    for (std::size_t i = 0; i < nu.size(); ++i)
        nu[i] = d0.masses[i] + d1s.masses[i] + d1t.masses[i];

    const HypothesisClass all = make_all_labelings(d0.points, {}, {});
    const std::vector<const Distribution*> extraS = {&mu1T};
    const std::vector<const Distribution*> extraT = {&mu1S};
    const auto src_sols = brute_force_solutions({mu0, mu1S, alpha}, all, restrict_ustar, extraS);
    const auto tgt_sols = brute_force_solutions({mu0, mu1T, alpha}, all, restrict_ustar, extraT);

    std::vector<std::vector<std::uint8_t>> tgt_keys;
    for (const auto& h : tgt_sols)
        tgt_keys.push_back(canonical_labels(std::get<DiscreteLabeling>(h), nu));

    EquivalenceReport rep;
    rep.verdict = Verdict::equivalent;
    for (const auto& h : src_sols) {
        const auto key = canonical_labels(std::get<DiscreteLabeling>(h), nu);
        if (std::find(tgt_keys.begin(), tgt_keys.end(), key) == tgt_keys.end()) {
            rep.verdict = Verdict::not_equivalent;
            rep.witness = h;
            return rep;
        }
    }
    if (auto lam = achievable_threshold({mu0, mu1T, alpha})) rep.witness_lambda = lam;
    return rep;
}

double symdiff_mass(const IntervalUnion& a, const IntervalUnion& b,
                    const std::vector<const Distribution*>& laws) {
    const IntervalUnion only_a = intersect(a, complement(b));
    const IntervalUnion only_b = intersect(b, complement(a));
    double m = 0.0;
    for (const auto* law : laws) {
        m += measure_of_region(*law, Classifier{only_a});
        m += measure_of_region(*law, Classifier{only_b});
    }
    return m;
}

}  // namespace

EquivalenceReport check_equivalence(const Distribution& mu0, const Distribution& mu1S,
                                    const Distribution& mu1T, double alpha,
                                    bool restrict_ustar, double tol) {
    if (is_discrete(mu0)) {
        if (!is_discrete(mu1S) || !is_discrete(mu1T))
            throw DomainMismatchError("check_equivalence: mixed domain kinds");
        return discrete_equivalence(std::get<DiscreteOnPoints>(mu0.law),
                                    std::get<DiscreteOnPoints>(mu1S.law),
                                    std::get<DiscreteOnPoints>(mu1T.law), alpha,
                                    restrict_ustar, mu0, mu1S, mu1T);
    }
    if (is_discrete(mu1S) || is_discrete(mu1T))
        throw DomainMismatchError("check_equivalence: mixed domain kinds");

    const auto lam_s = achievable_threshold({mu0, mu1S, alpha});
    if (!lam_s)
        throw NotAchievableError("check_equivalence: source level not achievable");
    const IntervalUnion src_region =
        std::get<IntervalUnion>(level_set({mu0, mu1S, alpha}, *lam_s).region);

    EquivalenceReport rep;
    const std::vector<const Distribution*> nu = {&mu0, &mu1S, &mu1T};

    if (!restrict_ustar) {
        // Solutions over unrestricted classifiers may drop any piece where
        // both p0 and p1S vanish; the target must put no mass there.
        const Interval s0 = support(mu0), s1s = support(mu1S);
        const IntervalUnion both_zero =
            intersect(complement(IntervalUnion{{s0}}), complement(IntervalUnion{{s1s}}));
        const double dropped = measure_of_region(mu1T, Classifier{both_zero});
        if (dropped > tol) {
            rep.verdict = Verdict::not_equivalent;
            rep.symdiff_mass = dropped;
            rep.witness = canonicalize(intersect(src_region, complement(both_zero)));
            return rep;
        }
    }

    const auto lam_t = achievable_threshold({mu0, mu1T, alpha});
    if (!lam_t) {
        rep.verdict = Verdict::not_equivalent;
        rep.witness = src_region;
        rep.symdiff_mass = kInf;
        return rep;
    }
    const IntervalUnion tgt_region =
        std::get<IntervalUnion>(level_set({mu0, mu1T, alpha}, *lam_t).region);
    const double sd = symdiff_mass(src_region, tgt_region, nu);
    rep.symdiff_mass = sd;
    if (sd <= tol) {
        rep.verdict = Verdict::equivalent;
        rep.witness_lambda = *lam_t;
    } else if (sd > 100.0 * tol) {
        rep.verdict = Verdict::not_equivalent;
        rep.witness = tgt_region;
    } else {
        rep.verdict = Verdict::undecided;
    }
    return rep;
}

}  // namespace nptx
