#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace liouville {

/// Input violates a mathematical precondition (Seiberg bounds, channel
/// conditions, |z| >= 1, ...). The CLI maps this to exit code 2.
class ConditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation hit a pole of a meromorphic function.
class PoleError : public ConditionError {
 public:
  PoleError(const std::string& what, std::complex<double> location)
      : ConditionError(what), location_(location) {}

  std::complex<double> location() const noexcept { return location_; }

 private:
  std::complex<double> location_;
};

/// Cholesky factorization of a Gram matrix failed.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liouville
