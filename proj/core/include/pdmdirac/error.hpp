#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdm {

enum class ErrorKind {
  OutOfDomain,
  StepUnderflow,
  NonConvergence,
  InvalidParam,
  DegenerateMap,
  DivisionByZero,
  NonPositiveG,
  BelowBottom,
  OrderingViolation,
  LinkViolation,
  BlowUp,
  SingularDenominator,
  ComplexEnergy,
  InversionFailure,
  ConvergenceFailure,
  ConfigError,
  DomainError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures of an iterative or adaptive numerical method.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::NonConvergence || kind_ == ErrorKind::ConvergenceFailure ||
           kind_ == ErrorKind::InversionFailure || kind_ == ErrorKind::BlowUp;
  }

 private:
  ErrorKind kind_;
};

}  // namespace pdm
