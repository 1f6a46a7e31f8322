#include "nptx/adaptive.h"

#include <cmath>
#include <limits>
#include <optional>

#include "nptx/classifier.h"
#include "nptx/empirical.h"
#include "nptx/errors.h"
#include "nptx/exponent.h"

namespace nptx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename Sample>
SelectResult select_impl(const Classifier& h_source, const Classifier& h_target,
                         const Sample& target_sample, int d, const AdaptiveConfig& cfg) {
    if (target_sample.empty()) throw ConfigError("adaptive_select: empty target sample");
    const Sample empty;
    const double miss_s = empirical_risks(h_source, empty, target_sample).type2;
    const double miss_t = empirical_risks(h_target, empty, target_sample).type2;
    const double a_nt = complexity_term(static_cast<std::int64_t>(target_sample.size()), d, cfg.delta);
    SelectResult out{h_source, true, (miss_s - miss_t) - cfg.c * std::sqrt(a_nt)};
    if (out.margin > 0.0) {
        out.h = h_target;
        out.chose_source = false;
    }
    return out;
}

}  // namespace

double complexity_term(std::int64_t n, int d, double delta) {
    if (n < 1) throw ConfigError("complexity_term: n must be >= 1");
    if (d < 1) throw ConfigError("complexity_term: d must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("complexity_term: delta must lie in (0,1)");
    const double nd = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    return (dd / nd) * std::log(std::max(nd, dd) / dd) + std::log(1.0 / delta) / nd;
}

SelectResult adaptive_select(const Classifier& h_source, const Classifier& h_target,
                             const std::vector<double>& target_sample, int d,
                             const AdaptiveConfig& cfg) {
    return select_impl(h_source, h_target, target_sample, d, cfg);
}

SelectResult adaptive_select(const Classifier& h_source, const Classifier& h_target,
                             const std::vector<std::int32_t>& target_sample, int d,
                             const AdaptiveConfig& cfg) {
    return select_impl(h_source, h_target, target_sample, d, cfg);
}

TrialResult run_adaptive(const TransferScenario& sc, std::int64_t n0, std::int64_t n_s,
                         std::int64_t n_t, const AdaptiveConfig& cfg, SplitRng rng,
                         const double* target_opt_risk) {
    validate(sc);
    if (n0 < 2) throw ConfigError("run_adaptive: n0 must be >= 2");
    if (n_s < 0 || n_t < 0) throw ConfigError("run_adaptive: negative sample size");
    if (n_s == 0 && n_t == 0) throw ConfigError("run_adaptive: no labeled samples requested");

    const int d = sc.cls.vc_dim;
    TrialResult out;
    out.scenario = sc.id;
    out.n0 = n0;
    out.n_s = n_s;
    out.n_t = n_t;
    out.epsilon0 = epsilon0_of(n0, d, cfg.delta0);
    out.a_ns = n_s > 0 ? complexity_term(n_s, d, cfg.delta) : kNaN;
    out.a_nt = n_t > 0 ? complexity_term(n_t, d, cfg.delta) : kNaN;
    out.margin = kNaN;

    SplitRng rng0 = rng.split(0);
    SplitRng rng_s = rng.split(1);
    SplitRng rng_t = rng.split(2);

    const ErmConfig ec{sc.alpha, out.epsilon0};
    std::optional<Classifier> h_s, h_t;
    std::optional<Classifier> chosen;

    const auto score = [&](const Classifier& h, double type1_emp) {
        const double opt = target_opt_risk
                               ? *target_opt_risk
                               : class_optimal_risk(sc.mu0, sc.mu1T, sc.alpha, sc.cls);
        const RiskPair r = true_risks(h, sc.mu0, sc.mu1T);
        out.excess_target = std::max(0.0, r.type2 - opt);
        out.type1_true = r.type1;
        out.type1_emp = type1_emp;
    };

    if (is_discrete(sc.mu0)) {
        const auto s0 = sample_atoms(sc.mu0, rng0, static_cast<std::size_t>(n0));
        const auto ss = sample_atoms(sc.mu1S, rng_s, static_cast<std::size_t>(n_s));
        const auto st = sample_atoms(sc.mu1T, rng_t, static_cast<std::size_t>(n_t));
        if (n_s > 0) h_s = constrained_erm(sc.cls, s0, ss, ec);
        if (n_t > 0) h_t = constrained_erm(sc.cls, s0, st, ec);
        if ((n_s > 0 && !h_s) || (n_t > 0 && !h_t)) {
            out.status = "infeasible";
            out.chose_source = -1;
            out.excess_target = out.type1_true = out.type1_emp = kNaN;
            return out;
        }
        if (h_s && h_t) {
            auto sel = adaptive_select(*h_s, *h_t, st, d, cfg);
            out.chose_source = sel.chose_source ? 1 : 0;
            out.margin = sel.margin;
            chosen = std::move(sel.h);
        } else {
            out.chose_source = h_s ? 1 : 0;
            chosen = h_s ? *h_s : *h_t;
        }
        score(*chosen, empirical_risks(*chosen, s0, {}).type1);
    } else {
        const auto s0 = sample_real(sc.mu0, rng0, static_cast<std::size_t>(n0));
        const auto ss = sample_real(sc.mu1S, rng_s, static_cast<std::size_t>(n_s));
        const auto st = sample_real(sc.mu1T, rng_t, static_cast<std::size_t>(n_t));
        if (n_s > 0) h_s = constrained_erm(sc.cls, s0, ss, ec);
        if (n_t > 0) h_t = constrained_erm(sc.cls, s0, st, ec);
        if ((n_s > 0 && !h_s) || (n_t > 0 && !h_t)) {
            out.status = "infeasible";
            out.chose_source = -1;
            out.excess_target = out.type1_true = out.type1_emp = kNaN;
            return out;
        }
        if (h_s && h_t) {
            auto sel = adaptive_select(*h_s, *h_t, st, d, cfg);
            out.chose_source = sel.chose_source ? 1 : 0;
            out.margin = sel.margin;
            chosen = std::move(sel.h);
        } else {
            out.chose_source = h_s ? 1 : 0;
            chosen = h_s ? *h_s : *h_t;
        }
        score(*chosen, empirical_risks(*chosen, s0, {}).type1);
    }
    return out;
}

}  // namespace nptx
