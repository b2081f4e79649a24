#pragma once

#include <stdexcept>
#include <string>

namespace pqed {

// Bad argument: outside an operation's domain (negative density, Ω <= 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Emitter inside or on the sphere.
struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Root search could not find a sign change.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_estimate)
      : std::runtime_error(what), residual(residual_estimate) {}
  double residual;
};

}  // namespace pqed
