#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lnd {

enum class ErrorKind {
    RingMismatch,
    BothZero,
    NotDivisible,
    DivisorZero,
    UnsupportedRing,
    BoundExceeded,
    ZeroInput,
    DimensionError,
    NotInKernel,
    NoLinearKernel,
    NoPreimage,
    ShapeViolation,
    NotAPthPower,
    RewriteNonExact,
    NonTermination,
    NotHomogeneous,
    InvalidArgument,
    SyntaxError,
    UndeclaredIdentifier,
    ArityMismatch,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this exception; `kind()` is the
/// machine-readable tag, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace lnd
