#pragma once

#include <stdexcept>
#include <string>

namespace opineq {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  SpectrumOutOfDomain,
  DimMismatch,
  InvalidNormParameter,
  NotPositiveDefinite,
  UnknownFunction,
  InvalidParameter,
  DegenerateInterval,
  NotConvexOrConcave,
  NotUnital,
  SingularNormalizer,
  NotNormalized,
  NonFiniteValue,
  FlagViolation,
  DomainViolation,
  NonCommutingUnsupportedF,
  SpectrumOutOfRange,
  SpectralSandwichViolated,
  ConjugateExponentViolation,
  TangentLeavesU,
  PointOutOfInterval,
  ZeroOperator,
  NotGaugeNormalized,
  PreconditionViolated,
  ConditionNotMet,
  ZeroDenominatorNorm,
  XOutOfDomain,
  ParseError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SpectrumOutOfDomain: return "SpectrumOutOfDomain";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::InvalidNormParameter: return "InvalidNormParameter";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::NotConvexOrConcave: return "NotConvexOrConcave";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::SingularNormalizer: return "SingularNormalizer";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::FlagViolation: return "FlagViolation";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NonCommutingUnsupportedF: return "NonCommutingUnsupportedF";
    case ErrorKind::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorKind::SpectralSandwichViolated: return "SpectralSandwichViolated";
    case ErrorKind::ConjugateExponentViolation: return "ConjugateExponentViolation";
    case ErrorKind::TangentLeavesU: return "TangentLeavesU";
    case ErrorKind::PointOutOfInterval: return "PointOutOfInterval";
    case ErrorKind::ZeroOperator: return "ZeroOperator";
    case ErrorKind::NotGaugeNormalized: return "NotGaugeNormalized";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ConditionNotMet: return "ConditionNotMet";
    case ErrorKind::ZeroDenominatorNorm: return "ZeroDenominatorNorm";
    case ErrorKind::XOutOfDomain: return "XOutOfDomain";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

/// Exception carrying a machine-readable failure kind; the CLI maps kinds
/// onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace opineq
