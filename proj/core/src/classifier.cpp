#include "nptx/classifier.h"

#include <algorithm>
#include <cmath>

#include "nptx/errors.h"

namespace nptx {

bool evaluate(const Classifier& h, double x) {
    const auto* iu = std::get_if<IntervalUnion>(&h);
    if (!iu) throw DomainMismatchError("evaluate: real point on a discrete labeling");
    for (const auto& p : iu->parts) {
        if (x < p.lo) return false;  // parts are sorted
        if (x <= p.hi) return true;
    }
    return false;
}

bool evaluate(const Classifier& h, std::int32_t atom_index) {
    const auto* lab = std::get_if<DiscreteLabeling>(&h);
    if (!lab) throw DomainMismatchError("evaluate: atom index on an interval region");
    if (atom_index < 0 || static_cast<std::size_t>(atom_index) >= lab->labels.size())
        throw DomainMismatchError("evaluate: atom index out of range");
    return lab->labels[static_cast<std::size_t>(atom_index)] != 0;
}

IntervalUnion canonicalize(IntervalUnion u) {
    for (const auto& p : u.parts)
        if (std::isnan(p.lo) || std::isnan(p.hi) || p.lo > p.hi)
            throw ConfigError("interval union: bad interval endpoints");
    std::sort(u.parts.begin(), u.parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalUnion out;
    for (const auto& p : u.parts) {
        if (!out.parts.empty() && p.lo <= out.parts.back().hi) {
            out.parts.back().hi = std::max(out.parts.back().hi, p.hi);
        } else {
            out.parts.push_back(p);
        }
    }
    return out;
}

IntervalUnion complement(const IntervalUnion& u) {
    IntervalUnion out;
    double cur = -kInf;
    for (const auto& p : u.parts) {
        if (p.lo > cur) out.parts.push_back({cur, p.lo});
        cur = p.hi;
    }
    if (cur < kInf) out.parts.push_back({cur, kInf});
    return out;
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
    IntervalUnion out;
    std::size_t i = 0, j = 0;
    while (i < a.parts.size() && j < b.parts.size()) {
        const double lo = std::max(a.parts[i].lo, b.parts[j].lo);
        const double hi = std::min(a.parts[i].hi, b.parts[j].hi);
        if (lo <= hi) out.parts.push_back({lo, hi});
        if (a.parts[i].hi < b.parts[j].hi)
            ++i;
        else
            ++j;
    }
    return out;
}

RiskPair true_risks(const Classifier& h, const Distribution& mu0, const Distribution& mu1) {
    RiskPair r;
    r.type1 = measure_of_region(mu0, h);
    r.type2 = 1.0 - measure_of_region(mu1, h);
    return r;
}

RiskPair empirical_risks(const Classifier& h, const std::vector<double>& s0,
                         const std::vector<double>& s1) {
    RiskPair r;
    std::size_t acc0 = 0, acc1 = 0;
    for (double x : s0) acc0 += evaluate(h, x);
    for (double x : s1) acc1 += evaluate(h, x);
    r.type1 = s0.empty() ? 0.0 : static_cast<double>(acc0) / static_cast<double>(s0.size());
    r.type2 = s1.empty() ? 0.0
                         : 1.0 - static_cast<double>(acc1) / static_cast<double>(s1.size());
    return r;
}

RiskPair empirical_risks(const Classifier& h, const std::vector<std::int32_t>& s0,
                         const std::vector<std::int32_t>& s1) {
    RiskPair r;
    std::size_t acc0 = 0, acc1 = 0;
    for (auto i : s0) acc0 += evaluate(h, i);
    for (auto i : s1) acc1 += evaluate(h, i);
    r.type1 = s0.empty() ? 0.0 : static_cast<double>(acc0) / static_cast<double>(s0.size());
    r.type2 = s1.empty() ? 0.0
                         : 1.0 - static_cast<double>(acc1) / static_cast<double>(s1.size());
    return r;
}

}  // namespace nptx
