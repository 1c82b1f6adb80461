#pragma once

#include <stdexcept>
#include <string>

namespace braidfib {

enum class ErrorKind {
  InvalidInput,
  NotABraid,
  Tangency,
  NonConvergence,
  InsufficientHarmonics,
  MarginFailure,
  BasepointMismatch,
  LeavesXn,
  NotMorse,
  NonGeneric,
  TracingFailure,
  Inconsistent,
  CriticalPhi,
  GridTooCoarse,
  NonManifold,
  ClosedFormRequired,
  SymmetryFailure,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::NotABraid: return "not a braid";
    case ErrorKind::Tangency: return "tangency";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::InsufficientHarmonics: return "insufficient harmonics";
    case ErrorKind::MarginFailure: return "margin failure";
    case ErrorKind::BasepointMismatch: return "basepoint mismatch";
    case ErrorKind::LeavesXn: return "leaves X^_n";
    case ErrorKind::NotMorse: return "not Morse";
    case ErrorKind::NonGeneric: return "non-generic";
    case ErrorKind::TracingFailure: return "tracing failure";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::CriticalPhi: return "choose regular value";
    case ErrorKind::GridTooCoarse: return "grid too coarse";
    case ErrorKind::NonManifold: return "non-manifold";
    case ErrorKind::ClosedFormRequired: return "closed form required";
    case ErrorKind::SymmetryFailure: return "symmetry failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace braidfib
