#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (bad dimension, parameter out of range,
// unsupported domain for the requested operation).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDomain : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A quadrature sum hit a non-finite value or failed its self-convergence test.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// The moment series could not certify its truncation tail for the given points.
class KernelTailError : public Error {
 public:
  using Error::Error;
};

// An integral that should be finite is not (e.g. weight exponent <= -1).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace bergman
