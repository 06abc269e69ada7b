#pragma once

#include <stdexcept>
#include <string>

namespace et {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad problem statement: counts, quantum numbers, law parameters.
struct InvalidInput : Error {
  using Error::Error;
};

// Argument outside the admissible domain of a law (e.g. G(x) with x < m).
struct DomainError : Error {
  using Error::Error;
};

// The equations have no positive solution: the interaction does not bind.
struct NoBinding : Error {
  using Error::Error;
};

// Raised when inverting a law whose auxiliary equation pins the parameter
// instead of defining an inverse (quadratic kinetic energy, single r^2 term).
struct DegenerateLaw : Error {
  using Error::Error;
};

// Iteration budget exhausted; carries the best residual reached.
struct NoConvergence : Error {
  NoConvergence(const std::string& what, double best)
      : Error(what), best_residual(best) {}
  double best_residual;
};

// Numeric spectral search exhausted its window without finding the state.
struct NoBoundState : Error {
  using Error::Error;
};

}  // namespace et
