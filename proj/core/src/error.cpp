#include "orlizono/error.hpp"

namespace orlizono {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotConvex: return "NotConvex";
    case Errc::NotIncreasing: return "NotIncreasing";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotObtuse: return "NotObtuse";
    case Errc::NotABasis: return "NotABasis";
    case Errc::ZeroSupport: return "ZeroSupport";
    case Errc::DegenerateBody: return "DegenerateBody";
    case Errc::CenterNotInterior: return "CenterNotInterior";
    case Errc::PivotRemovalNotSpanning: return "PivotRemovalNotSpanning";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::OutOfInterval: return "OutOfInterval";
    case Errc::XOutsideProjection: return "XOutsideProjection";
    case Errc::NonMonotoneGrid: return "NonMonotoneGrid";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace orlizono
