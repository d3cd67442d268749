#include "charur/error.hpp"

#include <cstdio>

namespace charur {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::DegenerateParameter: return "degenerate-parameter";
    case ErrorKind::UnsupportedScale: return "unsupported-scale";
    case ErrorKind::InvalidScale: return "invalid-scale";
    case ErrorKind::InvalidObservable: return "invalid-observable";
    case ErrorKind::BasisMismatch: return "basis-mismatch";
    case ErrorKind::SingularProfile: return "singular-profile";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::StepSize: return "step-size";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace charur
