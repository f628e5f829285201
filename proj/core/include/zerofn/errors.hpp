#pragma once

#include <stdexcept>
#include <string>

namespace zerofn {

// Every failure mode in the library carries one of these codes plus a
// human-readable message with the witness data that triggered it.
enum class ErrorCode {
  NotPrime,
  NotIrreducible,
  NotARing,
  NotLocal,
  SizeLimit,
  ForeignElement,
  NotMonic,
  DegreeMismatch,
  BadRepresentatives,
  NonPrincipalMaximalIdeal,
  OutOfTheoremRange,
  NotAPiPolynomial,
  NotAZeroFunction,
  NotALift,
  NoStabilization,
  CapExceeded,
  UnsupportedForm,
  ParseError,
  InternalError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace zerofn
