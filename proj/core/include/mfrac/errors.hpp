#pragma once

#include <stdexcept>
#include <string>

namespace mfrac {

// Root of every exception thrown by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation
// (ln of a negative number, x <= 0 for ln_gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A parameter record violates its invariants (alpha out of range, beta <= 0).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A numerical limit, series or extrapolation failed to settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance. Carries the
// best estimate obtained so the caller can decide what to do with it.
class ToleranceError : public ConvergenceError {
 public:
  ToleranceError(const std::string& what, double best_estimate, double error_estimate)
      : ConvergenceError(what), best_(best_estimate), error_(error_estimate) {}

  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double best_;
  double error_;
};

// A witness search (Rolle, mean value) found no admissible point.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfrac
