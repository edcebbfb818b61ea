#pragma once

#include <stdexcept>
#include <string>

namespace relqm {

// Base class for all library errors so callers can catch broadly.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A commutation rule was requested for an operator pair that has none.
struct MissingRuleError : Error {
    explicit MissingRuleError(const std::string& msg) : Error(msg) {}
};

// An operation received operands it cannot represent exactly
// (non-invertible divisor, sqrt of a non-square, mixed symbol tables, ...).
struct AlgebraError : Error {
    explicit AlgebraError(const std::string& msg) : Error(msg) {}
};

// Scenario/model construction failed validation.
struct BindingError : Error {
    explicit BindingError(const std::string& msg) : Error(msg) {}
};

// Coordinate arguments left a chart's validity domain.
struct WedgeError : Error {
    explicit WedgeError(const std::string& msg) : Error(msg) {}
};

// Propagation exceeded a hard numerical guard; carries the failing step.
struct NumericalAbort : Error {
    NumericalAbort(const std::string& msg, long step_index)
        : Error(msg + " (step " + std::to_string(step_index) + ")"), step(step_index) {}
    long step;
};

}  // namespace relqm
