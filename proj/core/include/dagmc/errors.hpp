#pragma once

#include <stdexcept>
#include <string>

namespace dagmc {

enum class ErrorCode {
  CycleDetected,
  DanglingReference,
  KillTerminal,
  BudgetExhausted,
  BypassTerminal,
  ContainsTerminal,
  InfeasibleCut,
  ExhaustiveLimitExceeded,
  TooLarge,
  NotASeparator,
  NotSkewShaped,
  ExpansionTooLarge,
  ParseError,
  VerificationFailed,
  InternalError,
};

// Single exception type for the whole library; the code tells callers (and
// the CLI exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::KillTerminal: return "KillTerminal";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::BypassTerminal: return "BypassTerminal";
    case ErrorCode::ContainsTerminal: return "ContainsTerminal";
    case ErrorCode::InfeasibleCut: return "InfeasibleCut";
    case ErrorCode::ExhaustiveLimitExceeded: return "ExhaustiveLimitExceeded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotASeparator: return "NotASeparator";
    case ErrorCode::NotSkewShaped: return "NotSkewShaped";
    case ErrorCode::ExpansionTooLarge: return "ExpansionTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace dagmc
