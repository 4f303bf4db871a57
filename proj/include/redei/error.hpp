#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace redei {

enum class ErrorCode {
  NonPrimeCharacteristic,
  SizeLimit,
  ZeroInverse,
  CodeOutOfRange,
  SpecMismatch,
  DivisionByZeroPoly,
  ZeroPolynomial,
  NonMonic,
  TooFewPoints,
  PreconditionSize,
  OnlyZeroDirection,
  EmptySet,
  SizeOutOfRange,
  SlopeNotDetermined,
  AllOnOneLine,
  InfinityNotSpanned,
  DegenerateDirectionCount,
  PointNotInSet,
  AllDirectionsSpanned,
  DuplicateElement,
  ZeroScale,
  NotSymmetric,
  IdentityElement,
  MembershipViolation,
  TooSmall,
  BadExponent,
  BudgetExceeded,
  IoError,
  ParseError,
  InvalidArgument,
  TheoremViolation,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace redei
