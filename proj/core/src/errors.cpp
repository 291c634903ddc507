#include "octodpw/errors.hpp"

namespace octodpw {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::TypeP1Input: return "TypeP1Input";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NonConformalFrame: return "NonConformalFrame";
    case ErrorCode::NonIsotropicFrame: return "NonIsotropicFrame";
    case ErrorCode::NotSigmaV: return "NotSigmaV";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::ImmersionConditionFail: return "ImmersionConditionFail";
    case ErrorCode::PoleInDomain: return "PoleInDomain";
    case ErrorCode::StepSizeTooCoarse: return "StepSizeTooCoarse";
    case ErrorCode::FactorizationDiverged: return "FactorizationDiverged";
    case ErrorCode::OffBigCell: return "OffBigCell";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace octodpw
