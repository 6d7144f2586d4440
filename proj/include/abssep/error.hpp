#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abssep {

enum class ErrorCode {
  InvalidMatrix,
  InvalidVector,
  InvalidDim,
  InvalidState,
  DomainError,
  Unnormalized,
  DegenerateWitness,
  Unsupported,
  NoInteriorPoint,
  MaxIterations,
  CertificateRejected,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidVector: return "InvalidVector";
    case ErrorCode::InvalidDim: return "InvalidDim";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Unnormalized: return "Unnormalized";
    case ErrorCode::DegenerateWitness: return "DegenerateWitness";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NoInteriorPoint: return "NoInteriorPoint";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::CertificateRejected: return "CertificateRejected";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace abssep
