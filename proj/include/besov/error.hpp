#pragma once

#include <stdexcept>
#include <string>

namespace besov {

enum class ErrorKind {
  ParameterDomain,
  DomainExceeded,
  InsufficientCoverage,
  OptimizerDiverged,
  InvalidWeight,
  NotApplicable,
  Exactness,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterDomain: return "parameter-domain";
    case ErrorKind::DomainExceeded: return "domain-exceeded";
    case ErrorKind::InsufficientCoverage: return "insufficient-coverage";
    case ErrorKind::OptimizerDiverged: return "optimizer-diverged";
    case ErrorKind::InvalidWeight: return "invalid-weight";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::Exactness: return "exactness";
    case ErrorKind::InvalidInput: return "invalid-input";
  }
  return "unknown";
}

}  // namespace besov
