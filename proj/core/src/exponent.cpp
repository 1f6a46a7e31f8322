#include "nptx/exponent.h"

#include <algorithm>
#include <cmath>

#include "nptx/classifier.h"
#include "nptx/errors.h"
#include "nptx/np_oracle.h"

namespace nptx {

namespace {

constexpr double kFeasTol = 1e-12;
constexpr double kRhoMax = 64.0;
constexpr double kRhoTol = 1e-4;
constexpr double kUnitCap = 1.0 + 1e-9;
constexpr double kLooseCap = 1e6;

// Smallest t in [lo, hi] with mu0([t, hi]) <= alpha. The budget is
// continuous and decreasing in t, so bisection keeps the least feasible
// endpoint; exact boundary hits are preserved (the midpoint that attains
// the level becomes the returned endpoint).
double least_feasible_threshold(const Distribution& mu0, const ThresholdOnSegment& seg,
                                double alpha) {
    if (measure_interval(mu0, seg.lo, seg.hi) <= alpha) return seg.lo;
    double lo = seg.lo, hi = seg.hi;
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (measure_interval(mu0, mid, seg.hi) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

// Largest t in [t_star, hi] whose mu1-mass to the right matches that of
// t_star, i.e. the far edge of the flat stretch of the cdf at t_star.
double last_equal_threshold(const Distribution& mu1, const ThresholdOnSegment& seg,
                            double t_star) {
    const double g_star = cdf(mu1, t_star);
    if (cdf(mu1, seg.hi) <= g_star) return seg.hi;
    double lo = t_star, hi = seg.hi;
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (cdf(mu1, mid) > g_star)
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

std::vector<double> axis_grid(double lo, double hi, int n,
                              const std::vector<const Distribution*>& laws) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 8);
    for (int i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    for (const auto* d : laws)
        for (double k : density_knots(*d))
            if (k >= lo && k <= hi) out.push_back(k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PairScan {
    bool found = false;
    double best_risk = kInf;
    double best_a = 0.0, best_b = 0.0;     // least Type-II
    double worst_a = 0.0, worst_b = 0.0;   // among solutions, largest target Type-II
};

PairScan scan_interval_pairs(const IntervalUnionPair& pr, const Distribution& mu0,
                             const Distribution& mu1, const Distribution* tiebreak,
                             double alpha, int n) {
    const std::vector<const Distribution*> laws =
        tiebreak ? std::vector<const Distribution*>{&mu0, &mu1, tiebreak}
                 : std::vector<const Distribution*>{&mu0, &mu1};
    const auto as = axis_grid(pr.t0, 1.0, n, laws);
    const auto bs = axis_grid(pr.t1, pr.t0, n, laws);
    PairScan sc;
    for (double a : as) {
        for (double b : bs) {
            const RiskPair r = true_risks(interval_pair_member(pr, a, b), mu0, mu1);
            if (r.type1 > alpha + kFeasTol) continue;
            if (!sc.found || r.type2 < sc.best_risk) {
                sc.found = true;
                sc.best_risk = r.type2;
                sc.best_a = a;
                sc.best_b = b;
            }
        }
    }
    if (!sc.found || tiebreak == nullptr) return sc;
    double worst_target = -kInf;
    for (double a : as) {
        for (double b : bs) {
            const Classifier h = interval_pair_member(pr, a, b);
            const RiskPair r = true_risks(h, mu0, mu1);
            if (r.type1 > alpha + kFeasTol || r.type2 > sc.best_risk + 1e-11) continue;
            const double t = true_risks(h, mu0, *tiebreak).type2;
            if (t > worst_target) {
                worst_target = t;
                sc.worst_a = a;
                sc.worst_b = b;
            }
        }
    }
    return sc;
}

}  // namespace

double class_optimal_risk(const Distribution& mu0, const Distribution& mu1, double alpha,
                          const HypothesisClass& cls) {
    if (const auto* seg = std::get_if<ThresholdOnSegment>(&cls.family)) {
        const double t = least_feasible_threshold(mu0, *seg, alpha);
        if (measure_interval(mu0, t, seg->hi) > alpha + kFeasTol)
            throw InfeasibleError("class_optimal_risk: no threshold meets the level");
        return 1.0 - measure_interval(mu1, t, seg->hi);
    }
    if (const auto* pr = std::get_if<IntervalUnionPair>(&cls.family)) {
        const auto sc = scan_interval_pairs(*pr, mu0, mu1, nullptr, alpha, 513);
        if (!sc.found) throw InfeasibleError("class_optimal_risk: no member meets the level");
        return sc.best_risk;
    }
    const auto sols = brute_force_solutions({mu0, mu1, alpha}, cls, false);
    if (sols.empty()) throw InfeasibleError("class_optimal_risk: no member meets the level");
    return true_risks(sols.front(), mu0, mu1).type2;
}

Classifier worst_source_solution(const TransferScenario& sc) {
    if (const auto* seg = std::get_if<ThresholdOnSegment>(&sc.cls.family)) {
        const double t_star = least_feasible_threshold(sc.mu0, *seg, sc.alpha);
        if (measure_interval(sc.mu0, t_star, seg->hi) > sc.alpha + kFeasTol)
            throw InfeasibleError("worst_source_solution: no threshold meets the level");
        return threshold_member(*seg, last_equal_threshold(sc.mu1S, *seg, t_star));
    }
    if (const auto* pr = std::get_if<IntervalUnionPair>(&sc.cls.family)) {
        const auto scan = scan_interval_pairs(*pr, sc.mu0, sc.mu1S, &sc.mu1T, sc.alpha, 513);
        if (!scan.found)
            throw InfeasibleError("worst_source_solution: no member meets the level");
        return interval_pair_member(*pr, scan.worst_a, scan.worst_b);
    }
    const auto sols = brute_force_solutions({sc.mu0, sc.mu1S, sc.alpha}, sc.cls, false);
    if (sols.empty()) throw InfeasibleError("worst_source_solution: no member meets the level");
    std::size_t worst = 0;
    double worst_risk = -kInf;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const double t = true_risks(sols[i], sc.mu0, sc.mu1T).type2;
        if (t > worst_risk) {
            worst_risk = t;
            worst = i;
        }
    }
    return sols[worst];
}

ExponentContext make_exponent_context(const TransferScenario& sc) {
    validate(sc);
    ExponentContext ctx{sc, worst_source_solution(sc), 0.0, 0.0, 0.0, 0.0};
    ctx.source_opt_risk = true_risks(ctx.source_worst, sc.mu0, sc.mu1S).type2;
    ctx.target_anchor_risk = true_risks(ctx.source_worst, sc.mu0, sc.mu1T).type2;
    ctx.target_opt_risk = class_optimal_risk(sc.mu0, sc.mu1T, sc.alpha, sc.cls);
    ctx.delta = std::max(0.0, ctx.target_anchor_risk - ctx.target_opt_risk);
    return ctx;
}

ExcessPair excess_pair(const ExponentContext& ctx, const Classifier& h) {
    const RiskPair rs = true_risks(h, ctx.sc.mu0, ctx.sc.mu1S);
    if (rs.type1 > ctx.sc.alpha + ctx.sc.slack_r + kFeasTol)
        throw OutOfSlackError("excess_pair: Type-I risk exceeds alpha + slack");
    const double rt = true_risks(h, ctx.sc.mu0, ctx.sc.mu1T).type2;
    return {std::max(0.0, rs.type2 - ctx.source_opt_risk),
            std::max(0.0, rt - ctx.target_anchor_risk)};
}

ExponentFit fit_exponent(const std::vector<ExcessPair>& pairs) {
    constexpr double tiny_target = 1e-12;
    constexpr double tiny_source = 1e-15;

    std::vector<ExcessPair> kept;
    std::size_t zero_source = 0;
    for (const auto& p : pairs) {
        if (p.target <= tiny_target) continue;
        if (p.source <= tiny_source) {
            ++zero_source;
            continue;
        }
        kept.push_back(p);
    }
    if (zero_source > 0) return {kInf, kInf, kept.size() + zero_source};
    if (kept.empty()) return {1.0, 1.0, 0};

    const auto c_min = [&kept](double rho) {
        double c = 0.0;
        for (const auto& p : kept) c = std::max(c, std::pow(p.target, rho) / p.source);
        return c;
    };

    double cap;
    if (c_min(kRhoMax) <= kUnitCap)
        cap = kUnitCap;
    else if (c_min(kRhoMax) <= kLooseCap)
        cap = kLooseCap;
    else
        return {kInf, kInf, kept.size()};

    double rho;
    if (c_min(1.0) <= cap) {
        rho = 1.0;
    } else {
        double lo = 1.0, hi = kRhoMax;
        while (hi - lo > kRhoTol) {
            const double mid = 0.5 * (lo + hi);
            if (c_min(mid) <= cap)
                hi = mid;
            else
                lo = mid;
        }
        rho = hi;
    }
    return {rho, c_min(rho), kept.size()};
}

std::vector<Classifier> exponent_grid(const ExponentContext& ctx, int per_param) {
    if (per_param < 2) throw ConfigError("exponent_grid: per_param must be >= 2");
    const auto& sc = ctx.sc;
    const std::vector<const Distribution*> laws{&sc.mu0, &sc.mu1S, &sc.mu1T};
    std::vector<Classifier> members;
    if (const auto* seg = std::get_if<ThresholdOnSegment>(&sc.cls.family)) {
        for (double t : axis_grid(seg->lo, seg->hi, per_param, laws))
            members.push_back(threshold_member(*seg, t));
    } else if (const auto* pr = std::get_if<IntervalUnionPair>(&sc.cls.family)) {
        const auto as = axis_grid(pr->t0, 1.0, per_param, laws);
        const auto bs = axis_grid(pr->t1, pr->t0, per_param, laws);
        for (double a : as)
            for (double b : bs) members.push_back(interval_pair_member(*pr, a, b));
    } else if (const auto* al = std::get_if<AllLabelings>(&sc.cls.family)) {
        for (auto& lab : enumerate_labelings(*al)) members.push_back(std::move(lab));
    } else {
        members = std::get<ExplicitList>(sc.cls.family).items;
    }

    std::vector<Classifier> in_slack;
    for (auto& h : members) {
        const double t1 = true_risks(h, sc.mu0, sc.mu1S).type1;
        if (t1 <= sc.alpha + sc.slack_r + kFeasTol) in_slack.push_back(std::move(h));
    }
    return in_slack;
}

ExponentFit fit_exponent(const TransferScenario& sc, int per_param) {
    const auto ctx = make_exponent_context(sc);
    std::vector<ExcessPair> pairs;
    for (const auto& h : exponent_grid(ctx, per_param)) pairs.push_back(excess_pair(ctx, h));
    return fit_exponent(pairs);
}

}  // namespace nptx
