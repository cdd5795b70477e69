#pragma once

#include <stdexcept>
#include <string>

namespace tame {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  TagMismatch,
  NotInRing,
  NonInvertibleDenominator,
  NotAPid,
  GeneratorNameCollision,
  DifferentialNotSquareZero,
  FiltrationViolation,
  TwistingNotCochainMap,
  NotCochainMap,
  NotACocycle,
  TwistNotCongruentToM,
  DeformationNotSquareZero,
  CertificateFailure,
  NotFiniteDimensional,
  SearchBudgetExceeded,
  ScheduleDegreeTooTame,
  SimplicialIdentityViolation,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tame
