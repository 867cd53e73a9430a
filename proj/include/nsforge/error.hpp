#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nsforge {

enum class ErrorCode {
  OddDimension,
  NotAntisymmetric,
  DimensionMismatch,
  MultiplicitySumMismatch,
  ZeroForm,
  NotPrimitive,
  NotPrimitiveModL,
  RangeError,
  ZeroInput,
  Degenerate,
  NotAlternating,
  NotSymplectic,
  NotIdempotent,
  ProfileMismatch,
  RankMismatch,
  TraceMismatch,
  NotSymmetricForJ,
  TypeExponentMismatch,
  WrongDimensions,
  NotInSiegel,
  NotAnalytic,
  SizeMismatch,
  NotPrincipal,
  TypeMismatch,
  ParityError,
  DiscriminantError,
  NotEllipticClass,
  BudgetExceeded,
  ParseError,
  UsageError,
  InternalError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace nsforge
