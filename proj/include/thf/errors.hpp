#pragma once

#include <stdexcept>
#include <string>

namespace thf {

enum class ErrorKind {
  InputError,
  EvalAtJump,
  ConditionViolated,
  DomainError,
  NotFredholm,
  NotFredholmOnSide,
  BoundaryCase,
  CurveThroughOrigin,
  TruncationInsufficient,
  InsufficientCoefficients,
  MethodDisagreement,
  ResidualTooLarge,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace thf
