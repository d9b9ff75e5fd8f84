#include "netequil/error.hpp"

namespace netequil {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonNegativityViolated: return "NonNegativityViolated";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::RemoveAll: return "RemoveAll";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotContracting: return "NotContracting";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NoLattice: return "NoLattice";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NoEquilibriumFound: return "NoEquilibriumFound";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::UnhandledSingularity: return "UnhandledSingularity";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Usage: return "UsageError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

}  // namespace netequil
