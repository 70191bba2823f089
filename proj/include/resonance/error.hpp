#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

/// Bad input: malformed spec, out-of-range parameter, non-Hermitian operator.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator dimension beyond the configured cap.
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Requested representation needs data the spec does not carry
/// (e.g. full-space evolution of a spectral spec).
class UnsupportedRepresentation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure: results cannot be trusted at double precision.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateRootsError : public NumericError {
 public:
  using NumericError::NumericError;
};

class UnreachableTargetError : public NumericError {
 public:
  UnreachableTargetError(const std::string& what, double best_p)
      : NumericError(what), best_p_(best_p) {}
  double best_p() const noexcept { return best_p_; }

 private:
  double best_p_;
};

}  // namespace resonance
