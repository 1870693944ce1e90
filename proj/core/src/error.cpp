#include "pdmdirac/error.hpp"

namespace pdm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonPositiveG: return "NonPositiveG";
    case ErrorKind::BelowBottom: return "BelowBottom";
    case ErrorKind::OrderingViolation: return "OrderingViolation";
    case ErrorKind::LinkViolation: return "LinkViolation";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::ComplexEnergy: return "ComplexEnergy";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::DomainError: return "DomainError";
  }
  return "Unknown";
}

}  // namespace pdm
