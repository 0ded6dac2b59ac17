#pragma once

#include <stdexcept>
#include <string>

namespace hadamard {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input: bad arity, off-manifold point, nonpositive mass.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A geometric identity that must hold did not (e.g. non-monotone ray separation).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Iteration budget exhausted or a limit could not be resolved within the horizon.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hadamard
