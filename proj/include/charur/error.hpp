#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charur {

enum class ErrorKind {
  InvalidInput,        // bad parameters, shape or finiteness violations
  Truncation,          // cutoff too small for the requested state
  DegenerateParameter, // a parameter family hits a removable singularity
  UnsupportedScale,    // outside the supported problem size
  InvalidScale,        // complementary-form scale too small
  InvalidObservable,   // observable fails a positivity/Hermiticity contract
  BasisMismatch,
  SingularProfile,     // g1(t) = 0 in a quadratic profile
  Numeric,             // internal numeric failure (non-convergence)
  StepSize,            // ODE integration could not meet its invariant
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

  // Contract violations are the caller's fault; the rest are ours.
  bool is_contract() const noexcept {
    return kind_ != ErrorKind::Numeric && kind_ != ErrorKind::StepSize;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

/// Short "%.3g" rendering of a number for error messages.
std::string short_num(double x);

}  // namespace charur
