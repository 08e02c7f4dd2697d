/* error.hpp -- library error codes and the exception type carrying them */

#pragma once

#include <stdexcept>
#include <string>

namespace mimica {

enum class ErrorCode {
  InvalidArgument,
  ConfigurationMismatch,
  UndeclaredSymbol,
  NotHalted,
  NotOneHot,
  TableExhausted,
  MissingBinding,
  AlphabetMismatch,
  GlueIncompatible,
  HandoffOnReject,
  NotRegularCase,
  EnumerationTooLarge,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ConfigurationMismatch: return "configuration-mismatch";
    case ErrorCode::UndeclaredSymbol: return "undeclared-symbol";
    case ErrorCode::NotHalted: return "not-halted";
    case ErrorCode::NotOneHot: return "not-one-hot";
    case ErrorCode::TableExhausted: return "table-exhausted";
    case ErrorCode::MissingBinding: return "missing-binding";
    case ErrorCode::AlphabetMismatch: return "alphabet-mismatch";
    case ErrorCode::GlueIncompatible: return "glue-incompatible";
    case ErrorCode::HandoffOnReject: return "handoff-on-reject";
    case ErrorCode::NotRegularCase: return "not-regular-case";
    case ErrorCode::EnumerationTooLarge: return "enumeration-too-large";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mimica
