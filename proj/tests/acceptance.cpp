// End-to-end acceptance gate. Seven checks, one line of output each, exit
// status = number of failures. The checks exercise the library through its
// public surface only, at the sample sizes a desk machine can carry.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nptx/classifier.h"
#include "nptx/errors.h"
#include "nptx/exponent.h"
#include "nptx/harness.h"
#include "nptx/lowerbound.h"
#include "nptx/np_oracle.h"
#include "nptx/special.h"

using namespace nptx;

namespace {

constexpr std::uint64_t kSeed = 20260822;
constexpr int kJobs = 4;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

TransferScenario power_scenario(std::string id, double rho) {
    TransferScenario sc;
    sc.id = std::move(id);
    sc.mu0.law = Gaussian{-1.0, 1.0};
    sc.mu1S.law = PowerLaw{rho};
    sc.mu1T.law = Uniform{0.0, 1.0};
    sc.alpha = norm_cdf(2.0) - norm_cdf(1.0);
    sc.cls = make_threshold_class(-1.0, 1.0);
    sc.slack_r = 0.05;
    return sc;
}

// --- 1: closed-form excess pairs and exponent recovery ----------------------

Outcome check_power_excesses() {
    double max_dev = 0.0;
    double max_rho_err = 0.0, max_c_err = 0.0;
    for (double rho : {1.0, 2.0, 4.0}) {
        const auto sc = power_scenario("power-exact", rho);
        const auto ctx = make_exponent_context(sc);
        const ThresholdOnSegment seg{-1.0, 1.0};
        for (int k = 1; k <= 9; ++k) {
            const double t = k / 10.0;
            const auto p = excess_pair(ctx, threshold_member(seg, t));
            max_dev = std::max(max_dev, std::fabs(p.source - std::pow(t, rho)));
            max_dev = std::max(max_dev, std::fabs(p.target - t));
        }
        const auto fit = fit_exponent(sc);
        max_rho_err = std::max(max_rho_err, std::fabs(fit.rho_hat - rho));
        max_c_err = std::max(max_c_err, std::fabs(fit.c_hat - 1.0));
    }
    Outcome o;
    o.pass = max_dev <= 1e-12 && max_rho_err <= 0.01 && max_c_err <= 0.01;
    o.detail = "excess dev " + fmt(max_dev) + ", rho err " + fmt(max_rho_err) +
               ", C err " + fmt(max_c_err);
    return o;
}

// --- 2: population equivalence verdicts -------------------------------------

Outcome check_equivalence_suite() {
    std::vector<std::string> bad;

    const Distribution n0{Gaussian{0.0, 1.0}};
    const Distribution n1{Gaussian{1.0, 1.0}};
    const Distribution n2{Gaussian{2.0, 1.0}};
    for (double a : {0.01, 0.05, 0.1, 0.2, 0.5}) {
        if (check_equivalence(n0, n1, n2, a, true).verdict != Verdict::equivalent)
            bad.push_back("equal-variance alpha=" + fmt(a));
    }

    // Shrinking the target variance bends the ratio into a bounded window,
    // so the source ray stops being target-optimal.
    const Distribution narrow{Gaussian{1.0, 0.25}};
    const auto rep = check_equivalence(n0, n1, narrow, 0.05, true);
    if (rep.verdict != Verdict::not_equivalent) {
        bad.push_back("unequal-variance verdict");
    } else if (!rep.witness || !std::holds_alternative<IntervalUnion>(*rep.witness)) {
        bad.push_back("unequal-variance witness missing");
    } else {
        const auto& w = std::get<IntervalUnion>(*rep.witness);
        bool finite = !w.parts.empty();
        for (const auto& iv : w.parts)
            finite = finite && std::isfinite(iv.lo) && std::isfinite(iv.hi);
        if (!finite) bad.push_back("unequal-variance witness not a bounded interval");
    }

    // Five-atom discrete mirror of the tent construction: the last atom is
    // null-free and carries target mass only, so dropping it is free for the
    // source yet fatal for the target.
    const std::vector<std::string> pts{"far", "a", "b", "c", "out"};
    const Distribution d0{DiscreteOnPoints{pts, {7.0 / 8, 5.0 / 72, 7.0 / 288, 1.0 / 32, 0.0}}};
    const Distribution dS{DiscreteOnPoints{pts, {0.0, 1.0 / 3, 1.0 / 6, 1.0 / 2, 0.0}}};
    const Distribution dT{DiscreteOnPoints{pts, {0.0, 0.0, 1.0 / 8, 3.0 / 8, 1.0 / 2}}};
    const double alpha = 1.0 / 32;
    if (check_equivalence(d0, dS, dT, alpha, true).verdict != Verdict::equivalent)
        bad.push_back("discrete restricted verdict");
    const auto loose = check_equivalence(d0, dS, dT, alpha, false);
    if (loose.verdict != Verdict::not_equivalent) {
        bad.push_back("discrete unrestricted verdict");
    } else if (!loose.witness || !std::holds_alternative<DiscreteLabeling>(*loose.witness)) {
        bad.push_back("discrete witness missing");
    } else {
        const auto& w = std::get<DiscreteLabeling>(*loose.witness);
        if (!(w.labels[3] == 1 && w.labels[4] == 0))
            bad.push_back("discrete witness should accept c and drop out");
    }

    Outcome o;
    o.pass = bad.empty();
    o.detail = bad.empty() ? "13 verdicts as constructed" : bad.front();
    return o;
}

// --- 3: oracle vs brute force on random discrete problems -------------------

Outcome check_oracle_optimality() {
    SplitRng rng(kSeed, 3);
    int solved = 0;
    std::string fail;
    for (int iter = 0; solved < 500 && iter < 800 && fail.empty(); ++iter) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 8);
        std::vector<std::string> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = "x" + std::to_string(i);
        auto draw = [&](int zero_at) {
            std::vector<double> m(n);
            double tot = 0.0;
            for (int i = 0; i < n; ++i) {
                m[i] = (i == zero_at) ? 0.0 : 0.02 + rng.next_double();
                tot += m[i];
            }
            for (auto& v : m) v /= tot;
            return m;
        };
        // Occasionally erase an atom from one side so zero-density atoms and
        // infinite ratios show up in the pool.
        const auto m0 = draw(iter % 7 == 3 ? 0 : -1);
        const auto m1 = draw(iter % 5 == 2 ? 1 : -1);
        const Distribution mu0{DiscreteOnPoints{pts, m0}};
        const Distribution mu1{DiscreteOnPoints{pts, m1}};

        // An achievable level is the null mass of a top ratio group prefix.
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double ra = m0[a] > 0 ? m1[a] / m0[a] : kInf;
            const double rb = m0[b] > 0 ? m1[b] / m0[b] : kInf;
            return ra > rb;
        });
        const int cut = 1 + static_cast<int>(rng.next_u64() % (n - 1));
        double alpha = 0.0;
        for (int i = 0; i < cut; ++i) alpha += m0[order[i]];
        if (!(alpha > 1e-9 && alpha < 1.0 - 1e-9)) continue;

        const NPProblem prob{mu0, mu1, alpha};
        const auto sol = np_solution(prob);

        // Independent optimum: scan every labeling directly.
        double best = kInf;
        bool free_power = false;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            double t1 = 0.0, hit = 0.0;
            for (int i = 0; i < n; ++i) {
                if (mask >> i & 1u) {
                    t1 += m0[i];
                    hit += m1[i];
                }
            }
            if (t1 <= alpha + 1e-12) best = std::min(best, 1.0 - hit);
            if (t1 < alpha - 1e-9 && 1.0 - hit <= 1e-12) free_power = true;
        }
        if (std::fabs(sol.type2 - best) > 1e-12) {
            fail = "type2 mismatch at iter " + std::to_string(iter) + " (" +
                   fmt(sol.type2) + " vs " + fmt(best) + ")";
            break;
        }
        if (sol.type1 > alpha + 1e-12) {
            fail = "level overshoot at iter " + std::to_string(iter);
            break;
        }
        if (free_power) {
            fail = "zero miss strictly inside the budget at iter " + std::to_string(iter);
            break;
        }

        // Restricted solutions at the exact level must agree wherever either
        // law puts mass.
        const auto cls = make_all_labelings(pts, {}, {});
        const auto sols = brute_force_solutions(prob, cls, true);
        for (std::size_t i = 0; i < sols.size() && fail.empty(); ++i) {
            const auto& wi = std::get<DiscreteLabeling>(sols[i]);
            if (std::fabs(true_risks(sols[i], mu0, mu1).type1 - alpha) > 1e-9) continue;
            for (std::size_t j = i + 1; j < sols.size(); ++j) {
                const auto& wj = std::get<DiscreteLabeling>(sols[j]);
                if (std::fabs(true_risks(sols[j], mu0, mu1).type1 - alpha) > 1e-9) continue;
                for (int k = 0; k < n; ++k) {
                    if (m0[k] + m1[k] > 0 && wi.labels[k] != wj.labels[k]) {
                        fail = "two exact-level optima disagree on a charged atom, iter " +
                               std::to_string(iter);
                        break;
                    }
                }
                if (!fail.empty()) break;
            }
        }
        ++solved;
    }
    Outcome o;
    o.pass = fail.empty() && solved >= 500;
    o.detail = fail.empty() ? std::to_string(solved) + " problems matched" : fail;
    return o;
}

// --- 4 and 5 share their sweep output with 7 --------------------------------

struct SweepBundle {
    std::vector<TrialResult> rows;
    double alpha = 0.0;
};

SweepBundle run_bundle(TransferScenario sc, std::int64_t n0, std::vector<std::int64_t> ns,
                       std::vector<std::int64_t> nt, int reps) {
    SweepConfig cfg;
    cfg.scenario = std::move(sc);
    cfg.n0_grid = {n0};
    cfg.ns_grid = std::move(ns);
    cfg.nt_grid = std::move(nt);
    cfg.replicates = reps;
    cfg.base_seed = kSeed;
    cfg.jobs = kJobs;
    SweepBundle b;
    b.alpha = cfg.scenario.alpha;
    b.rows = run_sweep(cfg);
    return b;
}

double mean_excess(const std::vector<TrialResult>& rows, std::int64_t ns, std::int64_t nt,
                   int* n_out = nullptr) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.status == "ok" && r.n_s == ns && r.n_t == nt) {
            sum += r.excess_target;
            ++n;
        }
    }
    if (n_out) *n_out = n;
    return n > 0 ? sum / n : kInf;
}

Outcome check_convergence_slopes(const SweepBundle& tgt, const SweepBundle& src) {
    const double st = fit_rate(tgt.rows, SweepAxis::n_t).slope;
    const double ss = fit_rate(src.rows, SweepAxis::n_s).slope;
    Outcome o;
    const bool t_ok = st >= -0.65 && st <= -0.35;
    const bool s_ok = ss >= -0.40 && ss <= -0.15;
    o.pass = t_ok && s_ok;
    o.detail = "target slope " + fmt(st) + " (band [-0.65,-0.35]), source slope " + fmt(ss) +
               " (band [-0.40,-0.15])";
    return o;
}

Outcome check_adaptivity(const SweepBundle& equiv, const SweepBundle& shifted, double delta) {
    Outcome o;
    int na = 0, nb = 0;
    const double src_arm = mean_excess(equiv.rows, 16384, 0, &na);
    const double both_arm = mean_excess(equiv.rows, 16384, 256, &nb);
    const bool part1 = na >= 150 && nb >= 150 && both_arm <= 2.0 * src_arm + 1e-9 &&
                       src_arm <= 2.0 * both_arm + 1e-9;

    int nc = 0, nd = 0;
    const double tgt_arm = mean_excess(shifted.rows, 0, 4096, &nc);
    const double mix_arm = mean_excess(shifted.rows, 262144, 4096, &nd);
    const bool part2 = nc >= 150 && nd >= 150 && mix_arm <= 2.0 * tgt_arm + 1e-9 &&
                       tgt_arm <= 2.0 * mix_arm + 1e-9 && std::fabs(delta - 0.3) <= 1e-9;

    o.pass = part1 && part2;
    o.detail = "rich-source arms " + fmt(both_arm) + " vs " + fmt(src_arm) +
               "; shifted-target arms " + fmt(mix_arm) + " vs " + fmt(tgt_arm) +
               " at gap " + fmt(delta);
    return o;
}

// --- 6: hard families and packings ------------------------------------------

Outcome check_hard_families() {
    std::vector<std::string> bad;
    for (int dh : {17, 33}) {
        for (double rho : {1.0, 2.0}) {
            const auto fam = build_family(HardVariant::c1, dh, 0.25, rho, 1000000, 1000000,
                                          0.05, 0.0, SplitRng(kSeed, 61));
            const auto rep = verify_family(fam);
            if (!rep.all_pass) {
                for (const auto& c : rep.checks)
                    if (!c.pass)
                        bad.push_back("d_h=" + std::to_string(dh) + " rho=" + fmt(rho) + " " +
                                      c.name);
            }
            for (const auto& ps : rep.pair_stats) {
                if (ps.target_gap < fam.epsilon / 8.0 - 1e-15) {
                    bad.push_back("pair gap below epsilon/8 at d_h=" + std::to_string(dh));
                    break;
                }
            }
        }
    }
    for (int d : {8, 16, 32}) {
        const auto code = gv_packing(d, SplitRng(kSeed, 62));
        const std::size_t want = std::size_t{1} << (d / 8);
        bool ok = code.word_length == d && code.words.size() >= want;
        for (std::size_t i = 0; i < code.words.size() && ok; ++i)
            for (std::size_t j = i + 1; j < code.words.size() && ok; ++j)
                ok = hamming_distance(code.words[i], code.words[j]) >= (d + 7) / 8;
        if (!ok) bad.push_back("packing contract at d=" + std::to_string(d));
    }
    Outcome o;
    o.pass = bad.empty();
    o.detail = bad.empty() ? "4 families verified, 3 packings checked" : bad.front();
    return o;
}

// --- 7: realized level control across every sweep ---------------------------

Outcome check_level_control(const std::vector<const SweepBundle*>& bundles) {
    std::int64_t over = 0, total = 0;
    for (const auto* b : bundles) {
        for (const auto& r : b->rows) {
            if (r.status != "ok") continue;
            ++total;
            if (r.type1_true > b->alpha + r.epsilon0) ++over;
        }
    }
    const double frac = total > 0 ? static_cast<double>(over) / total : 1.0;
    const double bound = 0.05 + 2.0 * 0.05 / 3.0 + 0.02;
    Outcome o;
    o.pass = total > 0 && frac <= bound;
    o.detail = std::to_string(over) + "/" + std::to_string(total) + " over budget (cap " +
               fmt(bound) + ")";
    return o;
}

int report(int idx, const char* name, const Outcome& o, double seconds, double budget) {
    const bool timed_out = budget > 0 && seconds > budget;
    const bool pass = o.pass && !timed_out;
    std::cout << "[" << idx << "] " << name << ": " << (pass ? "PASS" : "FAIL") << "  ("
              << o.detail;
    if (timed_out) std::cout << "; over time budget";
    std::cout << "; " << fmt(seconds) << " s)\n";
    return pass ? 0 : 1;
}

template <typename F>
Outcome guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

double lap(std::chrono::steady_clock::time_point& t) {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - t).count();
    t = now;
    return s;
}

}  // namespace

int main() {
    int fails = 0;
    auto t = std::chrono::steady_clock::now();

    const auto o1 = guarded([] { return check_power_excesses(); });
    fails += report(1, "closed-form excess pairs and exponent recovery", o1, lap(t), 5.0);
    const auto o2 = guarded([] { return check_equivalence_suite(); });
    fails += report(2, "population equivalence verdicts", o2, lap(t), 5.0);
    const auto o3 = guarded([] { return check_oracle_optimality(); });
    fails += report(3, "oracle optimality on random discrete problems", o3, lap(t), 30.0);

    // The four Monte Carlo sweeps feed three checks, so they run once here.
    SweepBundle tgt_rate, src_rate, equiv, shifted;
    double delta_gap = 0.0;
    const auto sweeps = guarded([&] {
        std::vector<std::int64_t> grid;
        for (std::int64_t n = 128; n <= 16384; n *= 2) grid.push_back(n);
        tgt_rate = run_bundle(power_scenario("rate-target", 1.0), 65536, {0}, grid, 200);
        src_rate = run_bundle(power_scenario("rate-source", 2.0), 65536, grid, {0}, 200);
        equiv = run_bundle(power_scenario("rich-source", 1.0), 4096, {16384}, {0, 256}, 200);

        const auto inst = build_instance(HardVariant::c3, 5, 0.25, 0.6, 1.0, {-1, -1});
        delta_gap = instance_anchors(inst).delta;
        auto sc = to_scenario(inst, 0.05);
        sc.id = "shifted-target";
        shifted = run_bundle(std::move(sc), 131072, {0, 262144}, {4096}, 200);
        return Outcome{true, ""};
    });
    const double sweep_s = lap(t);

    if (!sweeps.pass) {
        fails += report(4, "excess risk decay slopes", sweeps, sweep_s, 600.0);
        fails += report(5, "adaptive rule tracks the better sample", sweeps, 0.0, 600.0);
        const auto o6 = guarded([] { return check_hard_families(); });
        fails += report(6, "hard family audits and packing contract", o6, lap(t), 60.0);
        fails += report(7, "realized level stays within budget", sweeps, 0.0, 0.0);
        std::cout << fails << " of 7 checks failed\n";
        return fails;
    }

    const auto o4 = guarded([&] { return check_convergence_slopes(tgt_rate, src_rate); });
    fails += report(4, "excess risk decay slopes", o4, sweep_s + lap(t), 600.0);
    const auto o5 = guarded([&] { return check_adaptivity(equiv, shifted, delta_gap); });
    fails += report(5, "adaptive rule tracks the better sample", o5, sweep_s + lap(t), 600.0);
    const auto o6 = guarded([] { return check_hard_families(); });
    fails += report(6, "hard family audits and packing contract", o6, lap(t), 60.0);
    const auto o7 =
        guarded([&] { return check_level_control({&tgt_rate, &src_rate, &equiv, &shifted}); });
    fails += report(7, "realized level stays within budget", o7, lap(t), 0.0);

    if (fails == 0)
        std::cout << "all 7 checks passed\n";
    else
        std::cout << fails << " of 7 checks failed\n";
    return fails;
}
