#include "anderson/error.hpp"

namespace anderson {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NoRootInField: return "NoRootInField";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RamificationError: return "RamificationError";
    case ErrorKind::ResidueSplittingError: return "ResidueSplittingError";
    case ErrorKind::IndeterminateNorm: return "IndeterminateNorm";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::TailNotNegligible: return "TailNotNegligible";
    case ErrorKind::HigherOrderPole: return "HigherOrderPole";
    case ErrorKind::OutsideRadius: return "OutsideRadius";
    case ErrorKind::CompatPreconditionFailed: return "CompatPreconditionFailed";
    case ErrorKind::GateFailed: return "GateFailed";
  }
  return "Unknown";
}

bool is_precondition_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidElement:
    case ErrorKind::InvalidInput:
    case ErrorKind::ConfigError:
      return false;
    default:
      return true;
  }
}

}  // namespace anderson
