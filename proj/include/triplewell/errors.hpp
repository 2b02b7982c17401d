#pragma once

#include <stdexcept>
#include <string>

namespace triplewell {

/// Violation of a numerical-regime contract (asymptotic window, quadrature
/// tolerance, grid adequacy, ...). The CLI maps these to exit code 3.
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonAdjacentMinima : ContractError {
    explicit NonAdjacentMinima(const std::string& msg)
        : ContractError("NonAdjacentMinima: " + msg) {}
};

struct QuadratureFailure : ContractError {
    explicit QuadratureFailure(const std::string& msg)
        : ContractError("QuadratureFailure: " + msg) {}
};

struct InsufficientTail : ContractError {
    explicit InsufficientTail(const std::string& msg)
        : ContractError("InsufficientTail: " + msg) {}
};

struct ZeroModeVanishes : ContractError {
    explicit ZeroModeVanishes(const std::string& msg)
        : ContractError("ZeroModeVanishes: " + msg) {}
};

struct AsymptoticRegimeViolated : ContractError {
    explicit AsymptoticRegimeViolated(const std::string& msg)
        : ContractError("AsymptoticRegimeViolated: " + msg) {}
};

struct EvenK : ContractError {
    explicit EvenK(const std::string& msg) : ContractError("EvenK: " + msg) {}
};

struct BoxTooSmall : ContractError {
    explicit BoxTooSmall(const std::string& msg)
        : ContractError("BoxTooSmall: " + msg) {}
};

}  // namespace triplewell
