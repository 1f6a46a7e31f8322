#include "nptx/lowerbound.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <tuple>

#include "nptx/classifier.h"
#include "nptx/errors.h"
#include "nptx/special.h"

namespace nptx {

namespace {

std::string point_name(const char* stem, int i) { return std::string(stem) + std::to_string(i); }

// Largest accepted-pair-atom count whose Type-I risk stays within
// alpha + slack (each pair atom carries null mass 2 alpha / d).
int max_feasible_atoms(const HardInstance& inst, double slack_r) {
    const double per_atom = 2.0 * inst.alpha / static_cast<double>(inst.d);
    const double budget = inst.alpha + slack_r + 1e-12;
    const int m = static_cast<int>(std::floor(budget / per_atom));
    return std::min(m, inst.d);
}

// Per-pair acceptance patterns for a doubled atom pair (accept x1, accept x2):
// m = accepted count, c = 1 - a + b (the summary coefficient the excesses
// depend on; mirrored for sigma = -1 in the shared-pattern variant).
struct PairOption {
    int m;
    int c;
};
constexpr PairOption kPairOptions[4] = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};

std::vector<std::array<int, 4>> compositions(int total) {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a <= total; ++a)
        for (int b = 0; a + b <= total; ++b)
            for (int c = 0; a + b + c <= total; ++c)
                out.push_back({a, b, c, total - a - b - c});
    return out;
}

std::vector<ExcessPair> shared_pattern_pairs(const HardInstance& inst, double slack_r) {
    const int half = inst.d / 2;
    const int m_max = max_feasible_atoms(inst, slack_r);
    std::set<std::pair<int, int>> seen;  // (m, v) with v = sum of pair coefficients
    for (const auto& comp : compositions(half)) {
        int m = 0, v = 0;
        for (int k = 0; k < 4; ++k) {
            m += comp[static_cast<std::size_t>(k)] * kPairOptions[k].m;
            v += comp[static_cast<std::size_t>(k)] * kPairOptions[k].c;
        }
        if (m <= m_max) seen.insert({m, v});
    }
    const double d = inst.d;
    const double es_unit = std::pow(inst.epsilon, inst.rho) / (2.0 * d);
    const double et_unit = inst.epsilon / (2.0 * d);
    std::vector<ExcessPair> out;
    out.reserve(seen.size());
    for (auto [m, v] : seen) {
        const double g = 0.5 - static_cast<double>(m) / d;
        out.push_back({std::max(0.0, g + es_unit * v), std::max(0.0, g + et_unit * v)});
    }
    return out;
}

std::vector<ExcessPair> sign_blind_pairs(const HardInstance& inst, double slack_r) {
    const int half = inst.d / 2;
    int plus = 0;
    for (auto s : inst.sigma)
        if (s > 0) ++plus;
    const int minus = half - plus;
    const int m_max = max_feasible_atoms(inst, slack_r);

    const auto plus_comps = compositions(plus);
    const auto minus_comps = compositions(minus);
    std::set<std::tuple<int, int, int>> seen;  // (m, sum c, signed sum c)
    for (const auto& pc : plus_comps) {
        int mp = 0, cp = 0;
        for (int k = 0; k < 4; ++k) {
            mp += pc[static_cast<std::size_t>(k)] * kPairOptions[k].m;
            cp += pc[static_cast<std::size_t>(k)] * kPairOptions[k].c;
        }
        for (const auto& mc : minus_comps) {
            int mm = 0, cm = 0;
            for (int k = 0; k < 4; ++k) {
                mm += mc[static_cast<std::size_t>(k)] * kPairOptions[k].m;
                cm += mc[static_cast<std::size_t>(k)] * kPairOptions[k].c;
            }
            if (mp + mm <= m_max) seen.insert({mp + mm, cp + cm, cp - cm});
        }
    }
    const double d = inst.d;
    const double es_unit = std::pow(inst.epsilon, inst.rho) / (2.0 * d);
    const double et_unit = inst.epsilon / (2.0 * d);
    std::vector<ExcessPair> out;
    out.reserve(seen.size());
    for (auto [m, csum, csigned] : seen) {
        const double g = 0.5 - static_cast<double>(m) / d;
        out.push_back({std::max(0.0, g + es_unit * csum), std::max(0.0, g + et_unit * csigned)});
    }
    return out;
}

// Acceptance labels of the target-optimal member of one instance: the
// heavier atom of each pair.
DiscreteLabeling target_opt_labels(const HardInstance& inst) {
    DiscreteLabeling lab;
    lab.points = inst.points;
    lab.labels.assign(inst.points.size(), 0);
    if (inst.variant == HardVariant::c2) {
        lab.labels[inst.sigma[0] > 0 ? 1 : 2] = 1;
        return lab;
    }
    for (std::size_t i = 0; i < inst.sigma.size(); ++i) {
        if (inst.sigma[i] > 0)
            lab.labels[1 + 2 * i] = 1;
        else
            lab.labels[2 + 2 * i] = 1;
    }
    return lab;
}

}  // namespace

int hamming_distance(const std::vector<std::int8_t>& a, const std::vector<std::int8_t>& b) {
    if (a.size() != b.size()) throw ConfigError("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

PackingCode gv_packing_custom(int word_length, int min_dist, std::size_t target_size,
                              SplitRng rng, std::uint64_t draw_budget) {
    if (word_length < 1) throw ConfigError("gv_packing: word length must be >= 1");
    if (min_dist < 1 || min_dist > word_length)
        throw ConfigError("gv_packing: min_dist must lie in [1, word_length]");
    if (target_size < 1) throw ConfigError("gv_packing: target size must be >= 1");

    PackingCode code{word_length, min_dist, {}};
    code.words.emplace_back(static_cast<std::size_t>(word_length), std::int8_t{1});
    std::vector<std::int8_t> w(static_cast<std::size_t>(word_length));
    for (std::uint64_t draw = 0; code.words.size() < target_size; ++draw) {
        if (draw >= draw_budget)
            throw InfeasibleError("gv_packing: draw budget exhausted before reaching target size");
        std::uint64_t bits = rng.next_u64();
        for (int i = 0; i < word_length; ++i) {
            if (i % 64 == 0 && i > 0) bits = rng.next_u64();
            w[static_cast<std::size_t>(i)] = (bits >> (i % 64)) & 1 ? std::int8_t{1} : std::int8_t{-1};
        }
        bool ok = true;
        for (const auto& kept : code.words) {
            if (hamming_distance(kept, w) < min_dist) {
                ok = false;
                break;
            }
        }
        if (ok) code.words.push_back(w);
    }
    return code;
}

PackingCode gv_packing(int d, SplitRng rng) {
    if (d < 1) throw ConfigError("gv_packing: d must be >= 1");
    const int dist = (d + 7) / 8;
    const std::size_t target = std::size_t{1} << (d / 8);
    return gv_packing_custom(d, dist, target, rng);
}

HardInstance build_instance(HardVariant v, int d_h, double alpha, double epsilon, double rho,
                            std::vector<std::int8_t> sigma) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("build_instance: alpha must lie in (0, 1/2)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("build_instance: epsilon must lie in (0, 1)");
    if (!(rho >= 1.0)) throw ConfigError("build_instance: rho must be >= 1");
    for (auto s : sigma)
        if (s != 1 && s != -1) throw ConfigError("build_instance: sigma entries must be +-1");

    HardInstance inst;
    inst.variant = v;
    inst.d_h = d_h;
    inst.alpha = alpha;
    inst.epsilon = epsilon;
    inst.rho = rho;
    inst.sigma = std::move(sigma);

    if (v == HardVariant::c2) {
        if (d_h < 3 || d_h > 16) throw ConfigError("build_instance: three-point variant needs d_h in [3, 16]");
        if (inst.sigma.size() != 1) throw ConfigError("build_instance: sigma must have length 1");
        inst.d = 2;
        inst.points = {"x0", "x1", "x2"};
        const double k = inst.sigma[0];
        const double er = std::pow(epsilon, rho);
        inst.mu0 = {DiscreteOnPoints{inst.points, {1.0 - 2.0 * alpha, alpha, alpha}}};
        inst.mu1S = {DiscreteOnPoints{inst.points, {0.0, 0.5 + k * er / 2.0, 0.5 - k * er / 2.0}}};
        inst.mu1T = {DiscreteOnPoints{inst.points, {0.0, 0.5 + k * epsilon / 2.0, 0.5 - k * epsilon / 2.0}}};
    } else {
        if (d_h < 3) throw ConfigError("build_instance: d_h must be >= 3");
        inst.d = d_h % 2 == 1 ? d_h - 1 : d_h - 2;
        if (inst.sigma.size() != static_cast<std::size_t>(inst.d / 2))
            throw ConfigError("build_instance: sigma must have length d/2");
        inst.points.push_back("x0");
        for (int i = 1; i <= inst.d / 2; ++i) {
            inst.points.push_back(point_name("x1_", i));
            inst.points.push_back(point_name("x2_", i));
        }
        const double d = inst.d;
        const double er = std::pow(epsilon, rho);
        std::vector<double> m0(inst.points.size(), 2.0 * alpha / d);
        m0[0] = 1.0 - 2.0 * alpha;
        std::vector<double> ms(inst.points.size(), 0.0), mt(inst.points.size(), 0.0);
        for (std::size_t i = 0; i < inst.sigma.size(); ++i) {
            const double s = inst.sigma[i];
            const double s_src = v == HardVariant::c3 ? 1.0 : s;
            ms[1 + 2 * i] = (1.0 + s_src * er / 2.0) / d;
            ms[2 + 2 * i] = (1.0 - s_src * er / 2.0) / d;
            mt[1 + 2 * i] = (1.0 + s * epsilon / 2.0) / d;
            mt[2 + 2 * i] = (1.0 - s * epsilon / 2.0) / d;
        }
        inst.mu0 = {DiscreteOnPoints{inst.points, std::move(m0)}};
        inst.mu1S = {DiscreteOnPoints{inst.points, std::move(ms)}};
        inst.mu1T = {DiscreteOnPoints{inst.points, std::move(mt)}};
    }
    validate(inst.mu0);
    validate(inst.mu1S);
    validate(inst.mu1T);
    inst.cls = make_all_labelings(inst.points, {}, {"x0"});
    return inst;
}

HardFamily build_family(HardVariant v, int d_h, double alpha, double rho, std::int64_t n_s,
                        std::int64_t n_t, double c1, double delta_cap, SplitRng rng) {
    if (n_s < 1 || n_t < 1) throw ConfigError("build_family: sample sizes must be >= 1");
    if (!(c1 > 0.0)) throw ConfigError("build_family: c1 must be > 0");
    if (v == HardVariant::c3 && !(delta_cap > 0.0))
        throw ConfigError("build_family: the sign-blind variant needs delta_cap > 0");

    HardFamily fam;
    fam.variant = v;
    fam.d_h = d_h;
    fam.alpha = alpha;
    fam.rho = rho;
    fam.c1 = c1;
    fam.delta_cap = delta_cap;
    fam.n_s = n_s;
    fam.n_t = n_t;
    fam.slack_r = alpha / static_cast<double>(d_h);

    const double dh = static_cast<double>(d_h);
    const double ns = static_cast<double>(n_s);
    const double nt = static_cast<double>(n_t);
    switch (v) {
        case HardVariant::c1:
            fam.epsilon = c1 * std::min(std::pow(dh / ns, 1.0 / (2.0 * rho)), std::sqrt(dh / nt));
            break;
        case HardVariant::c2:
            fam.epsilon = c1 * std::min(std::pow(1.0 / ns, 1.0 / (2.0 * rho)), std::sqrt(1.0 / nt));
            break;
        case HardVariant::c3:
            fam.epsilon = c1 * std::min(delta_cap, std::sqrt(dh / nt));
            break;
    }
    if (!(fam.epsilon > 0.0 && fam.epsilon < 1.0))
        throw InfeasibleError("build_family: gap formula left (0,1); shrink c1 or grow the samples");

    if (v == HardVariant::c2) {
        fam.d = 2;
        fam.packing = PackingCode{1, 1, {{1}, {-1}}};
    } else {
        fam.d = d_h % 2 == 1 ? d_h - 1 : d_h - 2;
        const int half = fam.d / 2;
        fam.packing = gv_packing_custom(half, (half + 3) / 4,
                                        std::size_t{1} << (half / 4), rng);
    }
    for (const auto& w : fam.packing.words)
        fam.instances.push_back(build_instance(v, d_h, alpha, fam.epsilon, rho, w));
    return fam;
}

InstanceAnchors instance_anchors(const HardInstance& inst) {
    InstanceAnchors a;
    const double er = std::pow(inst.epsilon, inst.rho);
    if (inst.variant == HardVariant::c2) {
        a.source_opt_risk = 0.5 - er / 2.0;
        a.target_anchor_risk = 0.5 - inst.epsilon / 2.0;
        a.target_opt_risk = a.target_anchor_risk;
        a.delta = 0.0;
        return a;
    }
    a.source_opt_risk = 0.5 - er / 4.0;
    a.target_opt_risk = 0.5 - inst.epsilon / 4.0;
    if (inst.variant == HardVariant::c1) {
        a.target_anchor_risk = a.target_opt_risk;
        a.delta = 0.0;
    } else {
        int sum = 0;
        for (auto s : inst.sigma) sum += s;
        a.target_anchor_risk =
            0.5 - inst.epsilon * static_cast<double>(sum) / (2.0 * static_cast<double>(inst.d));
        a.delta = std::max(0.0, a.target_anchor_risk - a.target_opt_risk);
    }
    return a;
}

std::vector<ExcessPair> instance_excess_pairs(const HardInstance& inst, double slack_r) {
    if (inst.variant == HardVariant::c2) {
        // Four labelings; direct enumeration. Source masses of x1/x2 by k.
        const double er = std::pow(inst.epsilon, inst.rho);
        const double k = inst.sigma[0];
        const std::array<double, 3> src{0.0, 0.5 + k * er / 2.0, 0.5 - k * er / 2.0};
        const std::array<double, 3> tgt{0.0, 0.5 + k * inst.epsilon / 2.0,
                                        0.5 - k * inst.epsilon / 2.0};
        struct Member {
            double type1, rs, rt;
        };
        std::vector<Member> feasible;
        double best = kInf;
        for (int x1 = 0; x1 <= 1; ++x1) {
            for (int x2 = 0; x2 <= 1; ++x2) {
                const double type1 = inst.alpha * (x1 + x2);
                if (type1 > inst.alpha + slack_r + 1e-12) continue;
                const Member m{type1, 1.0 - x1 * src[1] - x2 * src[2],
                               1.0 - x1 * tgt[1] - x2 * tgt[2]};
                feasible.push_back(m);
                if (type1 <= inst.alpha + 1e-12) best = std::min(best, m.rs);
            }
        }
        double anchor = -kInf;
        for (const auto& m : feasible)
            if (m.type1 <= inst.alpha + 1e-12 && m.rs <= best + 1e-15) anchor = std::max(anchor, m.rt);
        std::vector<ExcessPair> out;
        for (const auto& m : feasible)
            out.push_back({std::max(0.0, m.rs - best), std::max(0.0, m.rt - anchor)});
        return out;
    }
    if (inst.variant == HardVariant::c1) return shared_pattern_pairs(inst, slack_r);
    return sign_blind_pairs(inst, slack_r);
}

TransferScenario to_scenario(const HardInstance& inst, double slack_r) {
    TransferScenario sc;
    sc.id = "hard_instance";
    sc.mu0 = inst.mu0;
    sc.mu1S = inst.mu1S;
    sc.mu1T = inst.mu1T;
    sc.alpha = inst.alpha;
    sc.cls = inst.cls;
    sc.slack_r = slack_r;
    return sc;
}

VerificationReport verify_family(const HardFamily& fam) {
    VerificationReport rep;
    const double eps = fam.epsilon;

    {
        double worst = -kInf;
        std::string detail;
        for (std::size_t i = 0; i < fam.instances.size(); ++i) {
            for (const auto& p : instance_excess_pairs(fam.instances[i], fam.slack_r)) {
                const double viol = std::pow(p.target, fam.rho) - p.source;
                if (viol > worst) {
                    worst = viol;
                    detail = "instance " + std::to_string(i) + " excesses (" +
                             std::to_string(p.source) + ", " + std::to_string(p.target) + ")";
                }
            }
        }
        rep.checks.push_back(
            {"transfer_exponent", worst <= 1e-9, worst, 1e-9, std::move(detail)});
    }

    {
        double worst = 0.0;
        for (const auto& inst : fam.instances)
            worst = std::max(worst, instance_anchors(inst).delta);
        const double cap = fam.variant == HardVariant::c3 ? fam.delta_cap : 0.0;
        rep.checks.push_back({"delta_bound", worst <= cap + 1e-12, worst, cap, ""});
    }

    {
        double min_gap = kInf;
        std::string detail;
        for (std::size_t i = 0; i < fam.instances.size(); ++i) {
            const auto& ti = fam.instances[i];
            const Classifier own = target_opt_labels(ti);
            const double base = true_risks(own, ti.mu0, ti.mu1T).type2;
            for (std::size_t j = 0; j < fam.instances.size(); ++j) {
                if (i == j) continue;
                const Classifier other = target_opt_labels(fam.instances[j]);
                const double gap = true_risks(other, ti.mu0, ti.mu1T).type2 - base;
                PairStat st;
                st.i = i;
                st.j = j;
                st.sigma_dist = hamming_distance(ti.sigma, fam.instances[j].sigma);
                st.target_gap = gap;
                st.kl_s = kl_divergence(ti.mu1S, fam.instances[j].mu1S);
                st.kl_t = kl_divergence(ti.mu1T, fam.instances[j].mu1T);
                rep.pair_stats.push_back(st);
                if (gap < min_gap) {
                    min_gap = gap;
                    detail = "instances " + std::to_string(i) + "," + std::to_string(j);
                }
            }
        }
        if (fam.instances.size() < 2) min_gap = kInf;
        rep.checks.push_back(
            {"separation", min_gap >= eps / 8.0 - 1e-15, min_gap, eps / 8.0, std::move(detail)});
    }

    {
        double worst = 0.0;
        for (const auto& st : rep.pair_stats)
            worst = std::max(worst, static_cast<double>(fam.n_s) * st.kl_s +
                                        static_cast<double>(fam.n_t) * st.kl_t);
        const double cap = std::log(static_cast<double>(fam.instances.size())) / 8.0;
        rep.checks.push_back({"kl_budget", worst <= cap + 1e-12, worst, cap, ""});
    }

    {
        const double dh = static_cast<double>(fam.d_h);
        const double lhs = fam.delta_cap + std::pow(dh / static_cast<double>(fam.n_s),
                                                    1.0 / (2.0 * fam.rho));
        const double rhs = std::sqrt(dh / static_cast<double>(fam.n_t));
        const double value = std::min(lhs, rhs);
        rep.checks.push_back({"rate_formula", value > 0.0 && value <= 2.0, value, 2.0, ""});
    }

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

KlBoundCheck bernoulli_kl_bound_check(double a, double b, double c0) {
    if (!(std::abs(a) < 0.5 && std::abs(b) < 0.5))
        throw ConfigError("bernoulli_kl_bound_check: offsets must lie in (-1/2, 1/2)");
    KlBoundCheck out;
    out.exact = bernoulli_kl(0.5 + a, 0.5 + b);
    out.bound = c0 * (a - b) * (a - b);
    out.holds = out.exact <= out.bound;
    return out;
}

}  // namespace nptx
