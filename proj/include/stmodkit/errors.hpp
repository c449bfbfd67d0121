#pragma once

#include <stdexcept>
#include <string>

namespace stmodkit {

/// Error categories surfaced by the library. CLI maps InvariantViolation to
/// exit code 2 and everything else to exit code 1.
enum class ErrorKind {
    MixedFields,
    DivisionByZero,
    DimensionMismatch,
    AlgebraMismatch,
    NotInvariant,
    NotInImage,
    NotEigenvector,
    UnclassifiedSummand,
    TooLarge,
    BadCharacteristic,
    BadField,
    InvalidModule,
    BadInput,
    InvariantViolation,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::MixedFields: return "MixedFields";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NotInImage: return "NotInImage";
        case ErrorKind::NotEigenvector: return "NotEigenvector";
        case ErrorKind::UnclassifiedSummand: return "UnclassifiedSummand";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::BadCharacteristic: return "BadCharacteristic";
        case ErrorKind::BadField: return "BadField";
        case ErrorKind::InvalidModule: return "InvalidModule";
        case ErrorKind::BadInput: return "BadInput";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(error_kind_name(kind) + std::string(": ") + message),
          kind_(kind),
          detail_(std::move(message)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// A paper-guaranteed condition failed at runtime. Carries the step tag so the
/// failure can be located (these indicate an implementation bug, not bad input).
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string step, std::string message)
        : Error(ErrorKind::InvariantViolation, step + ": " + message), step_(std::move(step)) {}

    const std::string& step() const { return step_; }

private:
    std::string step_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

inline void check_invariant(bool cond, const std::string& step, const std::string& msg) {
    if (!cond) throw InvariantViolation(step, msg);
}

} // namespace stmodkit
