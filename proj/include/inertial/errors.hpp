#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inertial {

enum class Errc {
    invalid_input,
    dimension_mismatch,
    ambient_mismatch,
    incompatible_endomorphism,
    not_divisible,
    not_invertible,
    not_inert,
    not_homomorphism,
    unsupported_ambient,
    infinite_index,
    trajectory_not_finite,
    zero_polynomial,
    empty_family,
    stabilization_not_detected,
    cap_exceeded,
    budget_exceeded,
    indeterminate_near_unit_circle,
};

// Coarse classes drive the CLI exit codes (1, 2, 3).
enum class ErrorClass { input, domain, budget };

constexpr std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_input: return "invalid_input";
        case Errc::dimension_mismatch: return "dimension_mismatch";
        case Errc::ambient_mismatch: return "ambient_mismatch";
        case Errc::incompatible_endomorphism: return "incompatible_endomorphism";
        case Errc::not_divisible: return "not_divisible";
        case Errc::not_invertible: return "not_invertible";
        case Errc::not_inert: return "not_inert";
        case Errc::not_homomorphism: return "not_homomorphism";
        case Errc::unsupported_ambient: return "unsupported_ambient";
        case Errc::infinite_index: return "infinite_index";
        case Errc::trajectory_not_finite: return "trajectory_not_finite";
        case Errc::zero_polynomial: return "zero_polynomial";
        case Errc::empty_family: return "empty_family";
        case Errc::stabilization_not_detected: return "stabilization_not_detected";
        case Errc::cap_exceeded: return "cap_exceeded";
        case Errc::budget_exceeded: return "budget_exceeded";
        case Errc::indeterminate_near_unit_circle: return "indeterminate_near_unit_circle";
    }
    return "unknown";
}

constexpr ErrorClass error_class(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_input:
        case Errc::dimension_mismatch:
        case Errc::zero_polynomial:
        case Errc::not_homomorphism:
        case Errc::incompatible_endomorphism:
            return ErrorClass::input;
        case Errc::stabilization_not_detected:
        case Errc::cap_exceeded:
        case Errc::budget_exceeded:
        case Errc::indeterminate_near_unit_circle:
            return ErrorClass::budget;
        default:
            return ErrorClass::domain;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }
    ErrorClass error_class() const noexcept { return inertial::error_class(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace inertial
