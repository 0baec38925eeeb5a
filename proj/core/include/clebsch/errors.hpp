#pragma once

#include <stdexcept>
#include <string>

namespace clebsch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a precondition (dimension mismatch, bad parameter).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A state left the domain on which a Hamiltonian or chart is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The Killing form is degenerate, so kappa-sharp and kappa* do not exist.
class NotSemisimpleError : public Error {
 public:
  using Error::Error;
};

// An iterative solve (initial point, stage equations) failed to converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Malformed input file or configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace clebsch
