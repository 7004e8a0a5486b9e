#pragma once

#include <stdexcept>
#include <string>

namespace monores {

enum class ErrorKind {
  InvalidField,
  ShapeError,
  EmptyIdeal,
  TooLarge,
  NotAComplex,
  NotMinimal,
  NotFound,
  NotACycle,
  HypothesisFailed,
  NotAMorphism,
  DegenerateColumn,
  NotMinimalSupport,
  VerificationFailed,
  ParseError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::EmptyIdeal: return "EmptyIdeal";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::DegenerateColumn: return "DegenerateColumn";
    case ErrorKind::NotMinimalSupport: return "NotMinimalSupport";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, std::string witness)
      : Error(kind, what + " [" + witness + "]") {
    witness_ = std::move(witness);
  }

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending element or degree, when the failure has one.
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace monores
