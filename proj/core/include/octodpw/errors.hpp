#pragma once

#include <stdexcept>
#include <string>

namespace octodpw {

enum class ErrorCode {
  NotIsotropic,
  Degenerate,
  TypeP1Input,
  NotOrthogonal,
  NonConformalFrame,
  NonIsotropicFrame,
  NotSigmaV,
  GradingViolation,
  ImmersionConditionFail,
  PoleInDomain,
  StepSizeTooCoarse,
  FactorizationDiverged,
  OffBigCell,
  DegeneratePoint,
  InvalidInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace octodpw
