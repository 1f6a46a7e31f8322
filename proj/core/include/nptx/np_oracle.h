#pragma once

#include <optional>
#include <vector>

#include "nptx/hypothesis.h"

namespace nptx {

struct NPProblem {
    Distribution mu0;
    Distribution mu1;
    double alpha = 0.0;
};

struct LevelSetResult {
    double lambda = 0.0;
    Classifier region;
    double mu0_mass = 0.0;
};

struct NPSolution {
    double lambda = 0.0;
    Classifier h;
    double type1 = 0.0;
    double type2 = 0.0;
};

enum class Verdict { equivalent, not_equivalent, undecided };

struct EquivalenceReport {
    Verdict verdict = Verdict::undecided;
    // Distinguishing classifier when not equivalent: a null-optimal region
    // the other side does not solve (or the competing level set).
    std::optional<Classifier> witness;
    // Matching target threshold when equivalent.
    std::optional<double> witness_lambda;
    double symdiff_mass = 0.0;
};

// Density-ratio super-level set { x : p1(x)/p0(x) >= lambda }, with the
// convention that a zero denominator (including 0/0) compares as +inf.
// Continuous geometry is solved analytically for Gaussian pairs and by
// per-cell sign scans otherwise; throws UnsupportedError when both laws
// have unbounded support and are not both Gaussian.
LevelSetResult level_set(const NPProblem& prob, double lambda);

// The threshold lambda* whose level set has null mass exactly alpha, if
// one exists; nullopt when the mass map jumps past alpha (plateau in the
// ratio distribution).
std::optional<double> achievable_threshold(const NPProblem& prob);

// Most-powerful test at level alpha, via the achievable threshold.
// Throws NotAchievableError when alpha is not attained.
NPSolution np_solution(const NPProblem& prob);

// All minimizers of Type-II error subject to Type-I <= alpha within a
// finite class (labelings or an explicit list), by enumeration.
// restrict_ustar keeps only classifiers accepting every atom with zero
// null mass and positive mass under mu1 or any law in extra_mass; those
// are the classifiers that can never waste power.
std::vector<Classifier> brute_force_solutions(
    const NPProblem& prob, const HypothesisClass& cls, bool restrict_ustar,
    const std::vector<const Distribution*>& extra_mass = {});

// Does every solution of the (mu0, mu1S, alpha) problem also solve
// (mu0, mu1T, alpha)? Discrete domains are decided exactly by enumerating
// solution sets; continuous domains compare the source alpha-level set
// against the target level-set family under the symmetric-difference mass
// of nu = mu0 + mu1S + mu1T (equivalent <= tol < gray zone < 100*tol <
// not equivalent). With restrict_ustar=false the check additionally
// requires the target to put no mass where both p0 and p1S vanish.
EquivalenceReport check_equivalence(const Distribution& mu0, const Distribution& mu1S,
                                    const Distribution& mu1T, double alpha,
                                    bool restrict_ustar, double tol = 1e-9);

}  // namespace nptx
