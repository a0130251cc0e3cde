#pragma once

#include <stdexcept>
#include <string>

namespace lineuler {

enum class ErrorCode {
    InvalidInput,             // malformed scenario, schema violation, bad flag
    Precondition,             // violated operation precondition
    NonDifferentiable,        // derivative requested at a profile cut point
    NotResonant,              // resonant closed form asked for a non-resonant scenario
    UnsupportedClosedForm,    // scenario outside a closed-form dispatch domain
    NonInvertible,            // representation conditions fail
    DegenerateRepresentation, // determinant Delta vanishes
    ResonantMode,             // a characteristic denominator vanishes
    ExcludedWavenumber,       // alpha = 0 passed to the propagator
    IntegrationFailure,       // adaptive quadrature did not converge
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace lineuler
