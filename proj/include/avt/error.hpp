#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace avt {

enum class ErrorKind {
  NonSquare,
  Singular,
  SizeMismatch,
  LengthMismatch,
  DimensionClash,
  OrderTooLarge,
  InvalidPolarizationType,
  NotAlternating,
  Degenerate,
  NotTwoByTwo,
  BadDivisor,
  NotSymplectic,
  NotIntegral,
  DegenerateRestriction,
  InvalidType,
  InvalidSiegelPoint,
  NearSingularBlock,
  Malformed,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
  case ErrorKind::NonSquare: return "NonSquare";
  case ErrorKind::Singular: return "Singular";
  case ErrorKind::SizeMismatch: return "SizeMismatch";
  case ErrorKind::LengthMismatch: return "LengthMismatch";
  case ErrorKind::DimensionClash: return "DimensionClash";
  case ErrorKind::OrderTooLarge: return "OrderTooLarge";
  case ErrorKind::InvalidPolarizationType: return "InvalidPolarizationType";
  case ErrorKind::NotAlternating: return "NotAlternating";
  case ErrorKind::Degenerate: return "Degenerate";
  case ErrorKind::NotTwoByTwo: return "NotTwoByTwo";
  case ErrorKind::BadDivisor: return "BadDivisor";
  case ErrorKind::NotSymplectic: return "NotSymplectic";
  case ErrorKind::NotIntegral: return "NotIntegral";
  case ErrorKind::DegenerateRestriction: return "DegenerateRestriction";
  case ErrorKind::InvalidType: return "InvalidType";
  case ErrorKind::InvalidSiegelPoint: return "InvalidSiegelPoint";
  case ErrorKind::NearSingularBlock: return "NearSingularBlock";
  case ErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (notably the command line front end) can branch on the cause.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace avt
