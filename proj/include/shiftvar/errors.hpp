#ifndef SHIFTVAR_ERRORS_HPP
#define SHIFTVAR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftvar {

// Machine-readable failure codes, surfaced verbatim by the CLI.
enum class ErrorCode {
  NotPrime,
  EvenOrTooSmall,
  ModulusTooLarge,
  DivisionByZero,
  FieldMismatch,
  SyntaxError,
  VariableIndexOutOfRange,
  ArityMismatch,
  DegreeNotBelowP,
  ZeroPolynomial,
  NotInvariantUnderU,
  ZeroShift,
  BudgetExceeded,
  RadiusTooLarge,
  DimensionMismatch,
  MetadataMissing,
  PreconditionViolated,
  DegreeTooSmall,
  RankBoundInvalid,
  PrimeTooSmall,
  NotACertificate,
  InvalidArgument,
};

constexpr std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::EvenOrTooSmall: return "EvenOrTooSmall";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::VariableIndexOutOfRange: return "VariableIndexOutOfRange";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DegreeNotBelowP: return "DegreeNotBelowP";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotInvariantUnderU: return "NotInvariantUnderU";
    case ErrorCode::ZeroShift: return "ZeroShift";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MetadataMissing: return "MetadataMissing";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::RankBoundInvalid: return "RankBoundInvalid";
    case ErrorCode::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorCode::NotACertificate: return "NotACertificate";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace shiftvar

#endif  // SHIFTVAR_ERRORS_HPP
