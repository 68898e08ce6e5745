#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cicr {

enum class ErrorCode {
    UnboundVariable,
    UnknownGlobal,
    NotAFunction,
    SortMismatch,
    UniverseError,
    IllTyped,
    NotAnArity,
    PositivityViolation,
    ConstructorIllTyped,
    NameClash,
    IllegalElimination,
    BranchMismatch,
    MotiveMismatch,
    MalformedCase,
    GuardViolation,
    AnnotationNotAType,
    WitnessTypeMismatch,
    FuelExhausted,
    MissingWitness,
    NotSmallInductive,
    NotSupported,
    ParseError,
    EmbeddingFailed,
    IOError,
};

std::string_view error_code_name(ErrorCode code);

/// Raised by the kernel, the translator and the frontend. The code is the
/// machine-readable part that diagnostics and tests match on.
class KernelError : public std::runtime_error {
public:
    KernelError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw KernelError(code, message);
}

}  // namespace cicr
