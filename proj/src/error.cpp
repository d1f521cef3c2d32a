#include "torusrf/error.hpp"

namespace torusrf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NonInjective: return "NonInjective";
    case ErrorKind::EndoMismatch: return "EndoMismatch";
    case ErrorKind::CompositeP: return "CompositeP";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::MissingModulus: return "MissingModulus";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::PrecisionIncrease: return "PrecisionIncrease";
    case ErrorKind::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorKind::DetNotUnit: return "DetNotUnit";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotPeriodic: return "NotPeriodic";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::CongruenceFailed: return "CongruenceFailed";
    case ErrorKind::WreathMismatch: return "WreathMismatch";
    case ErrorKind::RelationCheckFailed: return "RelationCheckFailed";
    case ErrorKind::IdentityElement: return "IdentityElement";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MissingImage: return "MissingImage";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace torusrf
