#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bandedge {

enum class ErrorCode {
  DegenerateLattice,
  NotRealValued,
  NotDivergenceFree,
  NotPositive,
  SolverFailure,
  SingularFactor,
  HypothesisViolated,
  IllConditionedMass,
  BoundaryEigenvalue,
  OddTorus,
  NotAttained,
  InvalidArgument,
  ConfigError,
  IOFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::NotDivergenceFree: return "NotDivergenceFree";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::IllConditionedMass: return "IllConditionedMass";
    case ErrorCode::BoundaryEigenvalue: return "BoundaryEigenvalue";
    case ErrorCode::OddTorus: return "OddTorus";
    case ErrorCode::NotAttained: return "NotAttained";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

}  // namespace bandedge
