#pragma once

#include <stdexcept>
#include <string>

namespace greenbvp {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: non-finite parameters, malformed grids, bad options.
class InputError : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations (gamma outside the frontier's domain,
// log of a non-positive argument, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A discrete linear system was (numerically) singular. Raised by the
// finite-difference oracle, which deliberately knows nothing about the
// analytic spectrum.
class NearResonanceError : public Error {
 public:
  using Error::Error;
};

// A quadrature node produced a non-finite integrand value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double location)
      : Error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

// Cone data cannot be built: lambda = 0 makes G(1, s) vanish identically.
class DegenerateConeError : public Error {
 public:
  using Error::Error;
};

// The kernel is not of constant sign, so no cone exists.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// Iterative solver did not converge (Newton on the collocation system).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// No nontrivial fixed point was located from any starting guess.
class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace greenbvp
