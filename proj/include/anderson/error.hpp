#pragma once

#include <stdexcept>
#include <string>

namespace anderson {

enum class ErrorKind {
  InvalidElement,
  InvalidInput,
  ConfigError,
  NoRootInField,
  DivideByZero,
  PrecisionExhausted,
  RamificationError,
  ResidueSplittingError,
  IndeterminateNorm,
  EvalAtPole,
  TailNotNegligible,
  HigherOrderPole,
  OutsideRadius,
  CompatPreconditionFailed,
  GateFailed,
};

const char* error_kind_name(ErrorKind kind);

/// Errors that name a mathematical precondition (a field or ramification
/// parameter to enlarge, a radius or gate violation) as opposed to malformed
/// input.
bool is_precondition_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace anderson
