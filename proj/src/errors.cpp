#include "algpaths/errors.hpp"
#include "algpaths/tolerance.hpp"

namespace algpaths {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotNearIdentity: return "NotNearIdentity";
    case ErrorKind::MultipleRoots: return "MultipleRoots";
    case ErrorKind::NotAlgebraic: return "NotAlgebraic";
    case ErrorKind::EmptyRealPart: return "EmptyRealPart";
    case ErrorKind::ResolutionResidualExceeded: return "ResolutionResidualExceeded";
    case ErrorKind::BadSignature: return "BadSignature";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::RootMismatch: return "RootMismatch";
    case ErrorKind::CentralElement: return "CentralElement";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotLocallyClose: return "NotLocallyClose";
    case ErrorKind::NotSameComponent: return "NotSameComponent";
    case ErrorKind::FactorizationFailed: return "FactorizationFailed";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::SubspaceSplitFailed: return "SubspaceSplitFailed";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
  }
  return "Unknown";
}

bool is_certification_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAlgebraic:
    case ErrorKind::ResolutionResidualExceeded:
    case ErrorKind::CertificationFailed:
    case ErrorKind::SearchExhausted:
    case ErrorKind::FactorizationFailed:
    case ErrorKind::SubspaceSplitFailed:
    case ErrorKind::RankAmbiguous:
      return true;
    default:
      return false;
  }
}

void ToleranceConfig::validate() const {
  if (!(residual_tol >= 0.0) || !(rank_rel_tol >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be non-negative");
  if (!(invertibility_margin > 0.0 && invertibility_margin < 1.0))
    throw Error(ErrorKind::InvalidArgument, "invertibility_margin must lie in (0, 1)");
}

}  // namespace algpaths
