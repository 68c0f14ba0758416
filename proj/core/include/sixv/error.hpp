#pragma once

#include <stdexcept>
#include <string>

namespace sixv {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition (bad domain, face outside domain, n >= N, ...).
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Boundary condition admits no height function. Carries a witness face
// where the minimal-extension formula fails to match the prescribed value.
class InadmissibleBoundary : public PreconditionError {
public:
  InadmissibleBoundary(const std::string& what, int witness_face)
      : PreconditionError(what), witness(witness_face) {}
  int witness;
};

// Arrow configuration has nonzero winding, so no height function exists.
class NoHeightFunction : public Error {
public:
  explicit NoHeightFunction(const std::string& what) : Error(what) {}
};

// Exhaustive enumeration refused; carries a log2 estimate of the state count.
class EnumerationCap : public Error {
public:
  EnumerationCap(const std::string& what, double log2_estimate)
      : Error(what), log2_states(log2_estimate) {}
  double log2_states;
};

// Power iteration failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double res) : Error(what), residual(res) {}
  double residual;
};

}  // namespace sixv
