#pragma once

#include <stdexcept>
#include <string>

namespace pframe {

/// Base class for all solver-specific failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

/// An iterative solve failed to reach its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& msg, int iterations, double residual)
      : Error(msg), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

/// Element-level failure, tagged with the element index.
class ElementSolveError : public Error {
 public:
  ElementSolveError(int element, const std::string& msg)
      : Error("element " + std::to_string(element) + ": " + msg),
        element(element) {}
  int element;
};

/// State for which the closed-form elastica constants are not defined.
class DegenerateStateError : public Error {
 public:
  explicit DegenerateStateError(const std::string& msg) : Error(msg) {}
};

class NoInflexionError : public Error {
 public:
  explicit NoInflexionError(const std::string& msg) : Error(msg) {}
};

class NoBucklingError : public Error {
 public:
  explicit NoBucklingError(const std::string& msg) : Error(msg) {}
};

/// Model file or model consistency violation.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace pframe
