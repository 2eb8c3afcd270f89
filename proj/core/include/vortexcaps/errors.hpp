#pragma once

#include <stdexcept>
#include <string>

namespace vortexcaps {

/// Argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Kernel evaluated at coincident points.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contour left the admissible colatitude band or the perturbation bound.
class PoleProximityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two interfaces of a band touch or cross.
class InterfaceCrossingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base state or spectral data is degenerate.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton iteration failed to reach the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vortexcaps
