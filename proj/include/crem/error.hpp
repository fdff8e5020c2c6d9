#pragma once

#include <stdexcept>
#include <string>

namespace crem {

enum class ErrorKind {
    SpecMismatch,
    NonInvertible,
    ZeroInverse,
    NoEmbedding,
    DegreeMismatch,
    InexactDivision,
    ZeroMap,
    IndeterminacyHit,
    SingularMatrix,
    Inconclusive,
    OriginNotFixed,
    NonUnit,
    ChartMismatch,
    OrderTooLow,
    GuardViolation,
    UnsupportedN,
    DominanceUnresolved,
    ZeroConstantTerm,
    DomainViolation,
    RootNotInField,
    ParseError,
    InvalidArgument,
};

const char* kind_name(ErrorKind k);

// Single exception type; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(std::string(kind_name(k)) + ": " + msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::ZeroInverse: return "ZeroInverse";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::ZeroMap: return "ZeroMap";
    case ErrorKind::IndeterminacyHit: return "IndeterminacyHit";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::OriginNotFixed: return "OriginNotFixed";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::GuardViolation: return "GuardViolation";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::DominanceUnresolved: return "DominanceUnresolved";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::RootNotInField: return "RootNotInField";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace crem
