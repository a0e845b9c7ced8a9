#include "lnd/error.hpp"

namespace lnd {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DivisorZero: return "DivisorZero";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::NoLinearKernel: return "NoLinearKernel";
    case ErrorKind::NoPreimage: return "NoPreimage";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::NotAPthPower: return "NotAPthPower";
    case ErrorKind::RewriteNonExact: return "RewriteNonExact";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    }
    return "Unknown";
}

} // namespace lnd
