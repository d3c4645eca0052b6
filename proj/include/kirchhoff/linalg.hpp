#pragma once

#include <functional>

#include "kirchhoff/grid.hpp"

namespace kirchhoff {

// Matrix-free symmetric positive definite operator on zero-trace fields.
struct LinearOperator {
  std::function<ScalarField(const ScalarField&)> apply;
  bool symmetric = true;
};

LinearOperator neg_laplacian_operator(const Grid& grid);

// Euclidean inner product of the nodal value vectors (no cell volume).
double dot(const ScalarField& a, const ScalarField& b);

// Conjugate gradients with relative l2 stopping: ||b - A x|| <= tol ||b||.
// The true residual is re-checked before returning; a zero right-hand side
// returns the zero field. Exceeding max_iter throws NoConvergenceError with
// the last residual attached.
ScalarField cg_solve(const LinearOperator& A, const ScalarField& rhs, double tol, int max_iter,
                     const ScalarField* warm_start = nullptr);

struct EigenPair {
  double lambda1 = 0.0;
  ScalarField phi1;        // positive, sup-normalized to 1
  double residual_sup = 0.0;
  int iterations = 0;
};

// Smallest Dirichlet eigenvalue of -Laplace by inverse power iteration from
// the all-ones vector, with the Rayleigh quotient as the eigenvalue estimate.
// Stops when consecutive Rayleigh quotients stagnate below tol*lambda AND the
// sup-norm eigen-residual is below tol*lambda.
EigenPair principal_eigenpair(const Grid& grid, double tol = 1e-8, int max_iter = 200);

// Solution of -Laplace(e) = 1 with zero trace; positive at every node.
ScalarField solve_poisson_unit(const Grid& grid, double tol = 1e-12);

}  // namespace kirchhoff
