#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympforge {

enum class ErrorCode {
  DegenerateForm,
  OddDimension,
  NotAntisymmetric,
  InvalidType,
  LengthMismatch,
  NotComparable,
  DimensionMismatch,
  NotSymplectic,
  NotAMember,
  TypeContextMismatch,
  SingularImaginaryPart,
  NotAPeriodMatrix,
  NotATaming,
  SingularBlock,
  WrongSignature,
  RankMismatch,
  NotStaticMetric,
  GridTooSmall,
  NonPositiveRadius,
  QuadratureFailure,
  InvalidCoupling,
  SampleMismatch,
  ShapeMismatch,
  DegenerateLattice,
  BoundTooLargeForBudget,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every failure the library reports is an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sympforge
