#include "nptx/empirical.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "nptx/classifier.h"
#include "nptx/errors.h"

namespace nptx {

namespace {

// Sorted-vector range count over the closed interval [lo, hi].
std::int64_t count_in(const std::vector<double>& sorted, double lo, double hi) {
    auto first = std::lower_bound(sorted.begin(), sorted.end(), lo);
    auto last = std::upper_bound(sorted.begin(), sorted.end(), hi);
    return static_cast<std::int64_t>(last - first);
}

std::vector<double> clipped_candidates(const std::vector<double>& sorted_a,
                                       const std::vector<double>& sorted_b,
                                       double lo, double hi) {
    std::vector<double> out;
    out.push_back(lo);
    out.push_back(hi);
    for (const auto* src : {&sorted_a, &sorted_b}) {
        auto first = std::lower_bound(src->begin(), src->end(), lo);
        auto last = std::upper_bound(src->begin(), src->end(), hi);
        out.insert(out.end(), first, last);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Score {
    std::int64_t miss;
    std::int64_t fa;
};

bool better(const Score& a, const Score& b) {
    if (a.miss != b.miss) return a.miss < b.miss;
    return a.fa < b.fa;
}

std::optional<Classifier> erm_threshold(const ThresholdOnSegment& seg,
                                        std::vector<double> s0, std::vector<double> s1,
                                        const ErmConfig& cfg) {
    std::sort(s0.begin(), s0.end());
    std::sort(s1.begin(), s1.end());
    const auto n0 = static_cast<std::int64_t>(s0.size());
    const auto n1 = static_cast<std::int64_t>(s1.size());
    const auto cands = clipped_candidates(s0, s1, seg.lo, seg.hi);

    bool found = false;
    Score best{0, 0};
    double best_t = 0.0;
    for (double t : cands) {
        const std::int64_t fa = count_in(s0, t, seg.hi);
        if (!within_budget(fa, n0, cfg)) continue;
        const Score sc{n1 - count_in(s1, t, seg.hi), fa};
        if (!found || better(sc, best)) {
            found = true;
            best = sc;
            best_t = t;
        }
    }
    if (!found) return std::nullopt;
    return threshold_member(seg, best_t);
}

std::optional<Classifier> erm_interval_pair(const IntervalUnionPair& pr,
                                            std::vector<double> s0, std::vector<double> s1,
                                            const ErmConfig& cfg) {
    std::sort(s0.begin(), s0.end());
    std::sort(s1.begin(), s1.end());
    const auto n0 = static_cast<std::int64_t>(s0.size());
    const auto n1 = static_cast<std::int64_t>(s1.size());
    const auto as = clipped_candidates(s0, s1, pr.t0, 1.0);
    const auto bs = clipped_candidates(s0, s1, pr.t1, pr.t0);

    struct RightCounts {
        std::int64_t fa, hit;
    };
    std::vector<RightCounts> right(as.size());
    for (std::size_t i = 0; i < as.size(); ++i)
        right[i] = {count_in(s0, as[i], 1.0), count_in(s1, as[i], 1.0)};

    bool found = false;
    Score best{0, 0};
    double best_a = 0.0, best_b = 0.0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const double a = as[i];
        for (double b : bs) {
            std::int64_t fa, hit;
            if (a == pr.t0) {
                // The two intervals fuse into [b, 1]; counting them separately
                // would double-count sample points sitting exactly at t0.
                fa = count_in(s0, b, 1.0);
                hit = count_in(s1, b, 1.0);
            } else {
                fa = right[i].fa + count_in(s0, b, pr.t0);
                hit = right[i].hit + count_in(s1, b, pr.t0);
            }
            if (!within_budget(fa, n0, cfg)) continue;
            const Score sc{n1 - hit, fa};
            if (!found || better(sc, best)) {
                found = true;
                best = sc;
                best_a = a;
                best_b = b;
            }
        }
    }
    if (!found) return std::nullopt;
    return interval_pair_member(pr, best_a, best_b);
}

std::optional<Classifier> erm_explicit(const ExplicitList& lst,
                                       const std::vector<double>& s0,
                                       const std::vector<double>& s1,
                                       const ErmConfig& cfg) {
    const auto n0 = static_cast<std::int64_t>(s0.size());
    bool found = false;
    Score best{0, 0};
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < lst.items.size(); ++i) {
        const auto risks = empirical_risks(lst.items[i], s0, s1);
        const auto fa = static_cast<std::int64_t>(std::llround(risks.type1 * static_cast<double>(n0)));
        if (!within_budget(fa, n0, cfg)) continue;
        const auto miss = static_cast<std::int64_t>(
            std::llround(risks.type2 * static_cast<double>(s1.size())));
        const Score sc{miss, fa};
        if (!found || better(sc, best)) {
            found = true;
            best = sc;
            best_idx = i;
        }
    }
    if (!found) return std::nullopt;
    return lst.items[best_idx];
}

}  // namespace

double epsilon0_of(std::int64_t n0, int d, double delta0) {
    if (n0 < 2) throw ConfigError("epsilon0_of: n0 must be >= 2");
    if (d < 1) throw ConfigError("epsilon0_of: d must be >= 1");
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw ConfigError("epsilon0_of: delta0 must lie in (0,1)");
    const double n = static_cast<double>(n0);
    return std::sqrt(128.0 * (static_cast<double>(d) * std::log(n) + std::log(8.0 / delta0)) / n);
}

bool within_budget(std::int64_t count, std::int64_t n0, const ErmConfig& cfg) {
    if (n0 < 1) throw ConfigError("within_budget: n0 must be >= 1");
    const double budget = cfg.alpha + 0.5 * cfg.epsilon0 + 1e-12;
    return static_cast<double>(count) <= budget * static_cast<double>(n0);
}

std::optional<Classifier> constrained_erm(const HypothesisClass& cls,
                                          const std::vector<double>& s0,
                                          const std::vector<double>& s1,
                                          const ErmConfig& cfg) {
    if (s0.empty()) throw ConfigError("constrained_erm: empty contamination sample");
    if (is_discrete_class(cls))
        throw DomainMismatchError("constrained_erm: real-valued samples against a discrete class");
    if (const auto* seg = std::get_if<ThresholdOnSegment>(&cls.family))
        return erm_threshold(*seg, s0, s1, cfg);
    if (const auto* pr = std::get_if<IntervalUnionPair>(&cls.family))
        return erm_interval_pair(*pr, s0, s1, cfg);
    return erm_explicit(std::get<ExplicitList>(cls.family), s0, s1, cfg);
}

std::optional<Classifier> constrained_erm(const HypothesisClass& cls,
                                          const std::vector<std::int32_t>& s0,
                                          const std::vector<std::int32_t>& s1,
                                          const ErmConfig& cfg) {
    if (s0.empty()) throw ConfigError("constrained_erm: empty contamination sample");
    const auto* al = std::get_if<AllLabelings>(&cls.family);
    if (al == nullptr)
        throw DomainMismatchError("constrained_erm: atom-indexed samples need a labeling class");

    const auto n_atoms = al->points.size();
    std::vector<std::int64_t> cnt0(n_atoms, 0), cnt1(n_atoms, 0);
    for (auto i : s0) {
        if (i < 0 || static_cast<std::size_t>(i) >= n_atoms)
            throw DomainMismatchError("constrained_erm: sample atom index out of range");
        ++cnt0[static_cast<std::size_t>(i)];
    }
    for (auto i : s1) {
        if (i < 0 || static_cast<std::size_t>(i) >= n_atoms)
            throw DomainMismatchError("constrained_erm: sample atom index out of range");
        ++cnt1[static_cast<std::size_t>(i)];
    }

    const auto n0 = static_cast<std::int64_t>(s0.size());
    const auto n1 = static_cast<std::int64_t>(s1.size());
    const auto labelings = enumerate_labelings(*al);
    bool found = false;
    Score best{0, 0};
    std::size_t best_idx = 0;
    for (std::size_t k = 0; k < labelings.size(); ++k) {
        const auto& lab = labelings[k].labels;
        std::int64_t fa = 0, hit = 0;
        for (std::size_t i = 0; i < n_atoms; ++i) {
            if (lab[i]) {
                fa += cnt0[i];
                hit += cnt1[i];
            }
        }
        if (!within_budget(fa, n0, cfg)) continue;
        const Score sc{n1 - hit, fa};
        if (!found || better(sc, best)) {
            found = true;
            best = sc;
            best_idx = k;
        }
    }
    if (!found) return std::nullopt;
    return labelings[best_idx];
}

}  // namespace nptx
