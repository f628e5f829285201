#include "zerofn/errors.hpp"

namespace zerofn {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotARing: return "NotARing";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ForeignElement: return "ForeignElement";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::BadRepresentatives: return "BadRepresentatives";
    case ErrorCode::NonPrincipalMaximalIdeal: return "NonPrincipalMaximalIdeal";
    case ErrorCode::OutOfTheoremRange: return "OutOfTheoremRange";
    case ErrorCode::NotAPiPolynomial: return "NotAPiPolynomial";
    case ErrorCode::NotAZeroFunction: return "NotAZeroFunction";
    case ErrorCode::NotALift: return "NotALift";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace zerofn
