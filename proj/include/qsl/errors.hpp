#pragma once

#include <stdexcept>

namespace qsl {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The state does not evolve (zero energy spread), so time bounds are vacuous.
/// Kept distinct from a control run that did not converge.
class StationaryStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsl
