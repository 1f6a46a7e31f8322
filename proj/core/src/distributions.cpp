#include "nptx/distributions.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nptx/errors.h"
#include "nptx/special.h"

namespace nptx {

namespace {

const Mixture& as_mixture(const Distribution& d) { return std::get<Mixture>(d.law); }

template <class T>
bool holds(const Distribution& d) {
    return std::holds_alternative<T>(d.law);
}

}  // namespace

bool is_discrete(const Distribution& d) { return holds<DiscreteOnPoints>(d); }

void validate(const Distribution& d) {
    if (const auto* g = std::get_if<Gaussian>(&d.law)) {
        if (!(g->variance > 0.0) || !std::isfinite(g->mean) || !std::isfinite(g->variance))
            throw ConfigError("gaussian: variance must be positive and finite");
    } else if (const auto* u = std::get_if<Uniform>(&d.law)) {
        if (!(u->lo < u->hi) || !std::isfinite(u->lo) || !std::isfinite(u->hi))
            throw ConfigError("uniform: need finite lo < hi");
    } else if (const auto* p = std::get_if<PowerLaw>(&d.law)) {
        if (!(p->rho >= 1.0) || !std::isfinite(p->rho))
            throw ConfigError("powerlaw: need rho >= 1");
    } else if (const auto* m = std::get_if<Mixture>(&d.law)) {
        if (m->weights.size() != m->components.size() || m->weights.empty())
            throw ConfigError("mixture: weights and components must align and be nonempty");
        double tot = 0.0;
        for (double w : m->weights) {
            if (!(w > 0.0)) throw ConfigError("mixture: weights must be positive");
            tot += w;
        }
        if (std::fabs(tot - 1.0) > 1e-12) throw ConfigError("mixture: weights must sum to 1");
        for (const auto& c : m->components) {
            if (is_discrete(c)) throw ConfigError("mixture: discrete components not supported");
            validate(c);
        }
    } else if (const auto* disc = std::get_if<DiscreteOnPoints>(&d.law)) {
        if (disc->points.size() != disc->masses.size() || disc->points.empty())
            throw ConfigError("discrete: points and masses must align and be nonempty");
        double tot = 0.0;
        for (double w : disc->masses) {
            if (!(w >= 0.0)) throw ConfigError("discrete: masses must be nonnegative");
            tot += w;
        }
        if (std::fabs(tot - 1.0) > 1e-12) throw ConfigError("discrete: masses must sum to 1");
        for (std::size_t i = 1; i < disc->points.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (disc->points[i] == disc->points[j])
                    throw ConfigError("discrete: duplicate point id " + disc->points[i]);
    }
}

double density(const Distribution& d, double x) {
    if (const auto* g = std::get_if<Gaussian>(&d.law)) {
        const double sd = std::sqrt(g->variance);
        return norm_pdf((x - g->mean) / sd) / sd;
    }
    if (const auto* u = std::get_if<Uniform>(&d.law)) {
        return (x >= u->lo && x <= u->hi) ? 1.0 / (u->hi - u->lo) : 0.0;
    }
    if (const auto* p = std::get_if<PowerLaw>(&d.law)) {
        if (x < 0.0 || x > 1.0) return 0.0;
        if (p->rho == 1.0) return 1.0;
        return p->rho * std::pow(x, p->rho - 1.0);
    }
    if (holds<Triangular>(d)) {
        if (x < -2.0 || x > 2.0) return 0.0;
        return x <= 0.0 ? x / 4.0 + 0.5 : -x / 4.0 + 0.5;
    }
    if (holds<Mixture>(d)) {
        const auto& m = as_mixture(d);
        double v = 0.0;
        for (std::size_t i = 0; i < m.weights.size(); ++i)
            v += m.weights[i] * density(m.components[i], x);
        return v;
    }
    throw DomainMismatchError("density: law is discrete, use mass()");
}

double mass(const Distribution& d, const std::string& id) {
    const auto* disc = std::get_if<DiscreteOnPoints>(&d.law);
    if (!disc) throw DomainMismatchError("mass: law is continuous, use density()");
    for (std::size_t i = 0; i < disc->points.size(); ++i)
        if (disc->points[i] == id) return disc->masses[i];
    throw DomainMismatchError("mass: unknown point id " + id);
}

double cdf(const Distribution& d, double x) {
    if (const auto* g = std::get_if<Gaussian>(&d.law))
        return norm_cdf((x - g->mean) / std::sqrt(g->variance));
    if (const auto* u = std::get_if<Uniform>(&d.law)) {
        if (x <= u->lo) return 0.0;
        if (x >= u->hi) return 1.0;
        return (x - u->lo) / (u->hi - u->lo);
    }
    if (const auto* p = std::get_if<PowerLaw>(&d.law)) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std::pow(x, p->rho);
    }
    if (holds<Triangular>(d)) {
        if (x <= -2.0) return 0.0;
        if (x >= 2.0) return 1.0;
        return x <= 0.0 ? x * x / 8.0 + x / 2.0 + 0.5 : 0.5 + x / 2.0 - x * x / 8.0;
    }
    if (holds<Mixture>(d)) {
        const auto& m = as_mixture(d);
        double v = 0.0;
        for (std::size_t i = 0; i < m.weights.size(); ++i)
            v += m.weights[i] * cdf(m.components[i], x);
        return v;
    }
    throw DomainMismatchError("cdf: not defined for discrete laws");
}

double measure_interval(const Distribution& d, double lo, double hi) {
    if (lo > hi) return 0.0;
    return cdf(d, hi) - cdf(d, lo);
}

double measure_of_region(const Distribution& d, const Classifier& h) {
    if (const auto* iu = std::get_if<IntervalUnion>(&h)) {
        if (is_discrete(d))
            throw DomainMismatchError("measure_of_region: interval region on discrete law");
        double v = 0.0;
        for (const auto& part : iu->parts) v += measure_interval(d, part.lo, part.hi);
        return v;
    }
    const auto& lab = std::get<DiscreteLabeling>(h);
    const auto* disc = std::get_if<DiscreteOnPoints>(&d.law);
    if (!disc) throw DomainMismatchError("measure_of_region: labeling on continuous law");
    if (lab.points.size() != disc->points.size())
        throw DomainMismatchError("measure_of_region: atom lists differ");
    double v = 0.0;
    for (std::size_t i = 0; i < lab.points.size(); ++i) {
        if (lab.points[i] != disc->points[i])
            throw DomainMismatchError("measure_of_region: atom order differs");
        if (lab.labels[i]) v += disc->masses[i];
    }
    return v;
}

Interval support(const Distribution& d) {
    if (holds<Gaussian>(d)) return {-kInf, kInf};
    if (const auto* u = std::get_if<Uniform>(&d.law)) return {u->lo, u->hi};
    if (holds<PowerLaw>(d)) return {0.0, 1.0};
    if (holds<Triangular>(d)) return {-2.0, 2.0};
    if (holds<Mixture>(d)) {
        const auto& m = as_mixture(d);
        Interval s{kInf, -kInf};
        for (const auto& c : m.components) {
            Interval cs = support(c);
            s.lo = std::min(s.lo, cs.lo);
            s.hi = std::max(s.hi, cs.hi);
        }
        return s;
    }
    throw DomainMismatchError("support: not defined for discrete laws");
}

std::vector<double> density_knots(const Distribution& d) {
    if (holds<Gaussian>(d)) return {};
    if (const auto* u = std::get_if<Uniform>(&d.law)) return {u->lo, u->hi};
    if (holds<PowerLaw>(d)) return {0.0, 1.0};
    if (holds<Triangular>(d)) return {-2.0, 0.0, 2.0};
    if (holds<Mixture>(d)) {
        std::vector<double> ks;
        for (const auto& c : as_mixture(d).components) {
            auto cks = density_knots(c);
            ks.insert(ks.end(), cks.begin(), cks.end());
        }
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        return ks;
    }
    throw DomainMismatchError("density_knots: not defined for discrete laws");
}

double quantile(const Distribution& d, double u) {
    if (!(u > 0.0 && u < 1.0)) throw ConfigError("quantile: u must be in (0,1)");
    if (const auto* g = std::get_if<Gaussian>(&d.law))
        return g->mean + std::sqrt(g->variance) * norm_quantile(u);
    if (const auto* un = std::get_if<Uniform>(&d.law))
        return un->lo + u * (un->hi - un->lo);
    if (const auto* p = std::get_if<PowerLaw>(&d.law)) return std::pow(u, 1.0 / p->rho);
    if (holds<Triangular>(d)) {
        return u <= 0.5 ? -2.0 + std::sqrt(8.0 * u) : 2.0 - std::sqrt(8.0 * (1.0 - u));
    }
    throw UnsupportedError("quantile: no closed form for this law");
}

std::vector<double> sample_real(const Distribution& d, SplitRng& rng, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    if (holds<Mixture>(d)) {
        // One uniform per draw: the integer part of the cumulative-weight scan
        // picks the component, the remainder (rescaled) drives its quantile.
        const auto& m = as_mixture(d);
        std::vector<double> cum(m.weights.size());
        std::partial_sum(m.weights.begin(), m.weights.end(), cum.begin());
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.next_open();
            std::size_t j = 0;
            while (j + 1 < cum.size() && u >= cum[j]) ++j;
            const double base = j == 0 ? 0.0 : cum[j - 1];
            double v = (u - base) / m.weights[j];
            v = std::min(std::max(v, 1e-16), 1.0 - 1e-16);
            out.push_back(quantile(m.components[j], v));
        }
        return out;
    }
    if (is_discrete(d))
        throw DomainMismatchError("sample_real: law is discrete, use sample_atoms()");
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(d, rng.next_open()));
    return out;
}

std::vector<std::int32_t> sample_atoms(const Distribution& d, SplitRng& rng, std::size_t n) {
    const auto* disc = std::get_if<DiscreteOnPoints>(&d.law);
    if (!disc) throw DomainMismatchError("sample_atoms: law is continuous");
    std::vector<double> cum(disc->masses.size());
    std::partial_sum(disc->masses.begin(), disc->masses.end(), cum.begin());
    std::vector<std::int32_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_open();
        std::size_t j = 0;
        while (j + 1 < cum.size() && u >= cum[j]) ++j;
        out.push_back(static_cast<std::int32_t>(j));
    }
    return out;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
    const auto* dp = std::get_if<DiscreteOnPoints>(&p.law);
    const auto* dq = std::get_if<DiscreteOnPoints>(&q.law);
    if (!dp || !dq)
        throw DomainMismatchError("kl_divergence: defined for discrete law pairs");
    if (dp->points != dq->points)
        throw DomainMismatchError("kl_divergence: atom lists differ");
    double v = 0.0;
    for (std::size_t i = 0; i < dp->masses.size(); ++i) {
        const double pi = dp->masses[i], qi = dq->masses[i];
        if (pi == 0.0) continue;
        if (qi == 0.0) return kInf;
        v += pi * std::log(pi / qi);
    }
    return v;
}

}  // namespace nptx
