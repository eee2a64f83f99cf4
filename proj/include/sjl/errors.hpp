#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sjl {

// Malformed or invariant-violating input. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that cannot produce a trustworthy number.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point outside (or on the boundary of) a model space.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class MetricEvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics attached to results.
using Warnings = std::vector<std::string>;

}  // namespace sjl
