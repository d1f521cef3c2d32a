#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torusrf {

enum class ErrorKind {
  InvalidArgument,
  IndexOutOfRange,
  RankMismatch,
  NonInjective,
  EndoMismatch,
  CompositeP,
  ReducibleModulus,
  MissingModulus,
  UnsupportedDegree,
  RingMismatch,
  NotAUnit,
  PrecisionIncrease,
  NonUnitDeterminant,
  DetNotUnit,
  CapExceeded,
  NotPeriodic,
  BudgetExceeded,
  SingularJacobian,
  OrderCapExceeded,
  CongruenceFailed,
  WreathMismatch,
  RelationCheckFailed,
  IdentityElement,
  SyntaxError,
  MissingImage,
  UnknownGenerator,
  SchemaMismatch,
  VerificationFailed,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the
// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace torusrf
