#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nptx/exponent.h"
#include "nptx/rng.h"
#include "nptx/scenario.h"

namespace nptx {

// Binary code over {-1,+1} with a minimum pairwise Hamming distance.
struct PackingCode {
    int word_length = 0;
    int min_dist = 0;
    std::vector<std::vector<std::int8_t>> words;
};

int hamming_distance(const std::vector<std::int8_t>& a, const std::vector<std::int8_t>& b);

// Greedy Gilbert-Varshamov packing: starts from the all-ones word and
// keeps random words at distance >= min_dist from everything kept so far.
// Throws InfeasibleError when the draw budget runs out before target_size
// words are found.
PackingCode gv_packing_custom(int word_length, int min_dist, std::size_t target_size,
                              SplitRng rng, std::uint64_t draw_budget = 1000000);

// The default packing used by the hard families: length d, distance
// ceil(d/8), at least 2^floor(d/8) words.
PackingCode gv_packing(int d, SplitRng rng);

// Three families of finite problems that fix the attainable rates:
//   c1: source and target carry the same sign pattern, source gaps
//       raised to the power rho (both samples can help);
//   c2: the three-point variant with constant-order null masses (no
//       dimension factor in the rates);
//   c3: the source is sign-blind, so only the target sample and the
//       anchor gap delta_cap limit the risk.
enum class HardVariant { c1, c2, c3 };

struct HardInstance {
    HardVariant variant = HardVariant::c1;
    int d_h = 0;      // VC budget of the construction
    int d = 0;        // number of paired atoms (2 for the three-point variant)
    double alpha = 0.0;
    double epsilon = 0.0;
    double rho = 1.0;
    std::vector<std::int8_t> sigma;
    std::vector<std::string> points;
    Distribution mu0, mu1S, mu1T;
    HypothesisClass cls;  // all labelings with the bulk atom pinned to 0
};

HardInstance build_instance(HardVariant v, int d_h, double alpha, double epsilon, double rho,
                            std::vector<std::int8_t> sigma);

struct HardFamily {
    HardVariant variant = HardVariant::c1;
    int d_h = 0;
    int d = 0;
    double alpha = 0.0;
    double rho = 1.0;
    double c1 = 0.0;        // scale knob in front of the gap formula
    double epsilon = 0.0;
    double delta_cap = 0.0; // anchor-gap budget (c3 only)
    double slack_r = 0.0;   // Type-I slack used by the exponent check
    std::int64_t n_s = 0;
    std::int64_t n_t = 0;
    PackingCode packing;
    std::vector<HardInstance> instances;
};

// Instantiates the family at the gap epsilon dictated by the sample sizes:
//   c1: c1 * min((d_h/n_s)^(1/(2 rho)), (d_h/n_t)^(1/2))
//   c2: c1 * min(n_s^(-1/(2 rho)), n_t^(-1/2))
//   c3: c1 * min(delta_cap, (d_h/n_t)^(1/2))
// one instance per packing word; slack_r = alpha/d_h.
HardFamily build_family(HardVariant v, int d_h, double alpha, double rho, std::int64_t n_s,
                        std::int64_t n_t, double c1, double delta_cap, SplitRng rng);

// Exact anchors of one instance (risk values are closed-form).
struct InstanceAnchors {
    double source_opt_risk = 0.0;
    double target_anchor_risk = 0.0;
    double target_opt_risk = 0.0;
    double delta = 0.0;
};

InstanceAnchors instance_anchors(const HardInstance& inst);

// Distinct (source excess, target excess) values over every labeling
// within Type-I level alpha + slack_r, computed from pair-count summaries
// rather than raw enumeration (feasible up to d = 32).
std::vector<ExcessPair> instance_excess_pairs(const HardInstance& inst, double slack_r);

// View an instance as a transfer scenario (small d only; the labeling
// class enumeration behind generic routines grows as 2^d).
TransferScenario to_scenario(const HardInstance& inst, double slack_r);

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct PairStat {
    std::size_t i = 0, j = 0;
    int sigma_dist = 0;
    double target_gap = 0.0;
    double kl_s = 0.0;
    double kl_t = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::vector<PairStat> pair_stats;
    bool all_pass = false;
};

// Audits a built family:
//   transfer_exponent  every in-slack labeling of every instance satisfies
//                      source_excess >= target_excess^rho (constant 1);
//   delta_bound        anchor gaps stay within delta_cap (0 for c1/c2);
//   separation         target risks of distinct instance optima differ by
//                      at least epsilon/8;
//   kl_budget          n_s KL_S + n_t KL_T <= ln(#instances)/8 pairwise;
//   rate_formula       min(delta_cap + (d_h/n_s)^(1/(2 rho)), (d_h/n_t)^(1/2))
//                      lands in (0, 2].
VerificationReport verify_family(const HardFamily& fam);

// KL(Ber(1/2+a) || Ber(1/2+b)) against the quadratic envelope c0*(a-b)^2.
struct KlBoundCheck {
    double exact = 0.0;
    double bound = 0.0;
    bool holds = false;
};

KlBoundCheck bernoulli_kl_bound_check(double a, double b, double c0 = 6.0);

}  // namespace nptx
