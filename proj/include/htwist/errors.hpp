#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace htwist {

enum class ErrorCode {
  CompositionNonzero,
  DimensionMismatch,
  AlgebraMismatch,
  NonHomogeneous,
  InfiniteSlice,
  ShapeError,
  JacobiFail,
  DimError,
  ImageEscapesCochains,
  InvalidInput,
  BNotClosed,
  NotDegree4,
  NotNilpotent,
  CourantAxiomFail,
  InvalidAlgebra,
  NilpotenceFail,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace htwist
