#pragma once

#include <stdexcept>
#include <string>

namespace nptx {

// Base for all library errors. CLI maps subclasses to exit codes:
// domain/math failures -> 1, config and I/O failures -> 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A continuous point was queried on a discrete law, mismatched atom sets,
// mismatched mu0/alpha between the two sides of an equivalence check, etc.
class DomainMismatchError : public Error {
public:
    using Error::Error;
};

// No level-set threshold attains the requested Type-I level exactly.
class NotAchievableError : public Error {
public:
    using Error::Error;
};

// Constrained fit has an empty feasible set.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// A classifier violates the Type-I slack of the scenario it was handed to.
class OutOfSlackError : public Error {
public:
    using Error::Error;
};

// Operation not defined for this input shape (e.g. density-ratio geometry
// the level-set scanner does not handle, oversized enumerations).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Bad configuration values, malformed JSON, unreadable files.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nptx
