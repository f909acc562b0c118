#include "capflp/error.hpp"

namespace capflp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::CapacityInfeasible: return "CapacityInfeasible";
    case ErrorKind::UnsupportedArity: return "UnsupportedArity";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotES: return "NotES";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapacityInfeasible:
    case ErrorKind::Infeasible:
    case ErrorKind::NotES:
      return 3;
    default:
      return 2;
  }
}

}  // namespace capflp
