#pragma once

#include <string>

#include "nptx/hypothesis.h"

namespace nptx {

// A source/target transfer problem: shared null law, two alternative laws,
// a Type-I level, and the class being learned over. slack_r is the Type-I
// slack used by transfer-exponent computations.
struct TransferScenario {
    std::string id;
    Distribution mu0;
    Distribution mu1S;
    Distribution mu1T;
    double alpha = 0.0;
    HypothesisClass cls;
    double slack_r = 0.0;
};

// Throws ConfigError / DomainMismatchError on inconsistent scenarios
// (mixed domain kinds, alpha outside (0,1), bad laws).
void validate(const TransferScenario& sc);

}  // namespace nptx
