#include "nptx/hypothesis.h"

#include <algorithm>
#include <cmath>

#include "nptx/errors.h"

namespace nptx {

HypothesisClass make_threshold_class(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("threshold class: need finite lo < hi");
    return {ThresholdOnSegment{lo, hi}, 1};
}

HypothesisClass make_interval_pair_class(double t0, double t1) {
    if (!(t1 < t0 && t0 < 1.0))
        throw ConfigError("interval pair class: need t1 < t0 < 1");
    return {IntervalUnionPair{t0, t1}, 2};
}

HypothesisClass make_all_labelings(std::vector<std::string> points,
                                   std::vector<std::string> forced_ones,
                                   std::vector<std::string> forced_zeros) {
    auto contains = [](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    for (const auto& f : forced_ones) {
        if (!contains(points, f)) throw ConfigError("labelings: forced-one not a point: " + f);
        if (contains(forced_zeros, f))
            throw ConfigError("labelings: point forced both ways: " + f);
    }
    for (const auto& f : forced_zeros)
        if (!contains(points, f)) throw ConfigError("labelings: forced-zero not a point: " + f);
    const int vc = static_cast<int>(points.size() - forced_ones.size() - forced_zeros.size());
    if (vc < 0) throw ConfigError("labelings: more forced labels than points");
    return {AllLabelings{std::move(points), std::move(forced_ones), std::move(forced_zeros)},
            vc};
}

HypothesisClass make_explicit(std::vector<Classifier> items, int vc_dim) {
    if (items.empty()) throw ConfigError("explicit class: empty list");
    if (vc_dim < 0) throw ConfigError("explicit class: negative vc_dim");
    return {ExplicitList{std::move(items)}, vc_dim};
}

Classifier threshold_member(const ThresholdOnSegment& c, double t) {
    if (!(t >= c.lo && t <= c.hi))
        throw ConfigError("threshold member: t outside segment");
    return IntervalUnion{{{t, c.hi}}};
}

Classifier interval_pair_member(const IntervalUnionPair& c, double a, double b) {
    if (!(a >= c.t0 && a <= 1.0 && b >= c.t1 && b <= c.t0))
        throw ConfigError("interval pair member: parameters outside ranges");
    return canonicalize(IntervalUnion{{{b, c.t0}, {a, 1.0}}});
}

namespace {

std::vector<double> clip_candidates(const std::vector<double>& breakpoints, double lo,
                                    double hi) {
    std::vector<double> c;
    c.push_back(lo);
    for (double b : breakpoints)
        if (b >= lo && b <= hi) c.push_back(b);
    c.push_back(hi);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

ExplicitList finite_reduction(const HypothesisClass& cls,
                              const std::vector<double>& breakpoints) {
    ExplicitList out;
    if (const auto* th = std::get_if<ThresholdOnSegment>(&cls.family)) {
        for (double t : clip_candidates(breakpoints, th->lo, th->hi))
            out.items.push_back(threshold_member(*th, t));
        return out;
    }
    if (const auto* pr = std::get_if<IntervalUnionPair>(&cls.family)) {
        const auto as = clip_candidates(breakpoints, pr->t0, 1.0);
        const auto bs = clip_candidates(breakpoints, pr->t1, pr->t0);
        for (double a : as)
            for (double b : bs) out.items.push_back(interval_pair_member(*pr, a, b));
        return out;
    }
    if (const auto* al = std::get_if<AllLabelings>(&cls.family)) {
        for (auto& lab : enumerate_labelings(*al)) out.items.push_back(std::move(lab));
        return out;
    }
    return std::get<ExplicitList>(cls.family);
}

std::vector<DiscreteLabeling> enumerate_labelings(const AllLabelings& c) {
    const std::size_t n = c.points.size();
    std::vector<int> fixed(n, -1);  // -1 free, else forced label
    auto index_of = [&](const std::string& id) {
        for (std::size_t i = 0; i < n; ++i)
            if (c.points[i] == id) return i;
        throw ConfigError("labelings: unknown forced id " + id);
    };
    for (const auto& f : c.forced_ones) fixed[index_of(f)] = 1;
    for (const auto& f : c.forced_zeros) fixed[index_of(f)] = 0;
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (fixed[i] < 0) free_idx.push_back(i);
    if (free_idx.size() > 24)
        throw UnsupportedError("labelings: enumeration beyond 24 free points");
    const std::size_t count = std::size_t{1} << free_idx.size();
    std::vector<DiscreteLabeling> out;
    out.reserve(count);
    DiscreteLabeling base;
    base.points = c.points;
    base.labels.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (fixed[i] == 1) base.labels[i] = 1;
    for (std::size_t code = 0; code < count; ++code) {
        DiscreteLabeling lab = base;
        for (std::size_t j = 0; j < free_idx.size(); ++j) {
            const std::size_t bit = free_idx.size() - 1 - j;  // rightmost atom fastest
            lab.labels[free_idx[j]] =
                static_cast<std::uint8_t>((code >> bit) & std::size_t{1});
        }
        out.push_back(std::move(lab));
    }
    return out;
}

bool is_discrete_class(const HypothesisClass& cls) {
    if (std::holds_alternative<AllLabelings>(cls.family)) return true;
    if (const auto* ex = std::get_if<ExplicitList>(&cls.family))
        return std::holds_alternative<DiscreteLabeling>(ex->items.front());
    return false;
}

}  // namespace nptx
