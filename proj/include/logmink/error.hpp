#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logmink {

enum class ErrorKind {
  InvalidInput,
  UnboundedBody,
  DimensionUnsupported,
  DegenerateBody,
  ToleranceUnreachable,
  SubspacesNotOrthogonal,
  OrderCapExceeded,
  NormalsDegenerate,
  NumericalRankAmbiguity,
  MeasureNotInvariant,
  ParameterOutOfRange,
  MassMismatch,
  ConditionViolated,
  Stalled,
  MaxIterExceeded,
  VerificationFailed,
  CutsOverlap,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is the
/// machine-readable part; the message carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnboundedBody: return "UnboundedBody";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::SubspacesNotOrthogonal: return "SubspacesNotOrthogonal";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::NormalsDegenerate: return "NormalsDegenerate";
    case ErrorKind::NumericalRankAmbiguity: return "NumericalRankAmbiguity";
    case ErrorKind::MeasureNotInvariant: return "MeasureNotInvariant";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::Stalled: return "Stalled";
    case ErrorKind::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::CutsOverlap: return "CutsOverlap";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace logmink
