#include "redei/error.hpp"

namespace redei {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::CodeOutOfRange: return "CodeOutOfRange";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::PreconditionSize: return "PreconditionSize";
    case ErrorCode::OnlyZeroDirection: return "OnlyZeroDirection";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::SlopeNotDetermined: return "SlopeNotDetermined";
    case ErrorCode::AllOnOneLine: return "AllOnOneLine";
    case ErrorCode::InfinityNotSpanned: return "InfinityNotSpanned";
    case ErrorCode::DegenerateDirectionCount: return "DegenerateDirectionCount";
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::AllDirectionsSpanned: return "AllDirectionsSpanned";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::IdentityElement: return "IdentityElement";
    case ErrorCode::MembershipViolation: return "MembershipViolation";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
  }
  return "Unknown";
}

}  // namespace redei
