#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capflp {

enum class ErrorKind {
  EmptyInput,
  OutOfRange,
  NonFinite,
  InvalidParams,
  LengthMismatch,
  TooLarge,
  CapacityInfeasible,
  UnsupportedArity,
  UnsupportedCase,
  Infeasible,
  PreconditionViolated,
  NotES,
  IoError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// CLI exit status for an error: 3 for infeasible / non-ES configurations, 2 otherwise.
int exit_code(ErrorKind kind);

}  // namespace capflp
