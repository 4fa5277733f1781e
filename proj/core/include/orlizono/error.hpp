#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orlizono {

enum class Errc {
  NotConvex,
  NotIncreasing,
  NotNormalized,
  NegativeArgument,
  NegativeInput,
  DimensionMismatch,
  SingularMatrix,
  ZeroVector,
  NotObtuse,
  NotABasis,
  ZeroSupport,
  DegenerateBody,
  CenterNotInterior,
  PivotRemovalNotSpanning,
  ZeroDenominator,
  OutOfInterval,
  XOutsideProjection,
  NonMonotoneGrid,
  InvalidArgument,
  ConfigError,
  IoError,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace orlizono
