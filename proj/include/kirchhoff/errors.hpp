#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kirchhoff {

// Base for every failure this library reports on purpose.
struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad grid request (unsupported dimension, too few nodes, non-positive extent).
struct DomainError : SolveError {
  using SolveError::SolveError;
};

// An iteration hit its cap. Carries the last residual so callers can report it.
struct NoConvergenceError : SolveError {
  double residual = 0.0;
  int iterations = 0;
  NoConvergenceError(const std::string& what, double residual_, int iterations_)
      : SolveError(what), residual(residual_), iterations(iterations_) {}
};

// A converged iterate escaped the barrier band beyond tolerance.
struct OrderingError : SolveError {
  std::size_t worst_node = 0;
  double worst_margin = 0.0;
  OrderingError(const std::string& what, std::size_t node, double margin)
      : SolveError(what), worst_node(node), worst_margin(margin) {}
};

// The truncation radius escalation ran out of doublings.
struct GradientBoundError : SolveError {
  double grad_sup = 0.0;
  double radius = 0.0;
  GradientBoundError(const std::string& what, double grad_sup_, double radius_)
      : SolveError(what), grad_sup(grad_sup_), radius(radius_) {}
};

// No admissible barrier could be constructed for the requested parameters.
struct InfeasibleError : SolveError {
  using SolveError::SolveError;
};

}  // namespace kirchhoff
