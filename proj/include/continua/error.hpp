#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace continua {

enum class ErrorKind {
    InvalidGraph,
    InvalidPoint,
    DisconnectedInput,
    InvalidCover,
    PreconditionViolated,
    Infeasible,
    CapExceeded,
    DomainMismatch,
    InvalidMap,
    ResolutionTooCoarse,
    NotACycle,
    NoFinenessAtCap,
    InvalidColoring,
    OrderViolation,
    Claim1Violation,
    ProjectionMismatch,
    NotInW,
    OutsideRectangles,
    NoXiAssignment,
    UMapCheckFailed,
    RadiusTooSmall,
    InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InvalidPoint: return "InvalidPoint";
        case ErrorKind::DisconnectedInput: return "DisconnectedInput";
        case ErrorKind::InvalidCover: return "InvalidCover";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::InvalidMap: return "InvalidMap";
        case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorKind::NotACycle: return "NotACycle";
        case ErrorKind::NoFinenessAtCap: return "NoFinenessAtCap";
        case ErrorKind::InvalidColoring: return "InvalidColoring";
        case ErrorKind::OrderViolation: return "OrderViolation";
        case ErrorKind::Claim1Violation: return "Claim1Violation";
        case ErrorKind::ProjectionMismatch: return "ProjectionMismatch";
        case ErrorKind::NotInW: return "NotInW";
        case ErrorKind::OutsideRectangles: return "OutsideRectangles";
        case ErrorKind::NoXiAssignment: return "NoXiAssignment";
        case ErrorKind::UMapCheckFailed: return "UMapCheckFailed";
        case ErrorKind::RadiusTooSmall: return "RadiusTooSmall";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// The single exception type of the library; `kind()` tells callers which contract failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace continua
