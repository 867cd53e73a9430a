#include "nsforge/error.hpp"

namespace nsforge {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MultiplicitySumMismatch: return "MultiplicitySumMismatch";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotPrimitiveModL: return "NotPrimitiveModL";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::NotSymmetricForJ: return "NotSymmetricForJ";
    case ErrorCode::TypeExponentMismatch: return "TypeExponentMismatch";
    case ErrorCode::WrongDimensions: return "WrongDimensions";
    case ErrorCode::NotInSiegel: return "NotInSiegel";
    case ErrorCode::NotAnalytic: return "NotAnalytic";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::DiscriminantError: return "DiscriminantError";
    case ErrorCode::NotEllipticClass: return "NotEllipticClass";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace nsforge
