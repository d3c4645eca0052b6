#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "kirchhoff/grid.hpp"
#include "kirchhoff/linalg.hpp"
#include "kirchhoff/nonlinearity.hpp"

namespace kirchhoff {

// Reaction with the spatial argument resolved to a node index.
using NodalReaction = std::function<double(std::size_t node, double t, const Vec& y)>;

struct SolverConfig {
  double lin_tol = 1e-10;        // relative CG residual
  double picard_tol = 1e-8;      // sup-norm update tolerance of the inner loop
  double picard_damping = 0.7;   // fraction of the new iterate blended in
  double outer_tol = 1e-8;       // |  |u|_{H1}^2 - s | at the accepted point
  int max_inner = 400;           // Picard iterations per coefficient value
  int max_outer = 100;           // bisection evaluations
  int max_linear = 200000;       // CG iteration cap
  double R_initial = 0.0;        // truncation radius; <= 0 requests the
                                 // barrier-derived default max(1, barrier grads)
  double R_growth = 2.0;
  int R_max_doublings = 12;
  double penalty_exponent = 0.5;
  double order_tol = 0.0;        // <= 0 requests 1e-6 * sup|upper barrier|
};

struct SolveReport {
  ScalarField u;
  double s_star = 0.0;        // accepted energy value |u|_{H1}^2
  double residual_sup = 0.0;  // sup_i |M(s)(-Lap u)_i - F(x_i, u_i, grad u_i)|
  int iters_inner = 0;        // total Picard iterations
  int iters_outer = 0;        // bisection evaluations
  double R_final = 0.0;       // accepted truncation radius (0 when untruncated)
  double grad_sup = 0.0;
  double margin_lower = 0.0;  // min(u - lower barrier); 0 without barriers
  double margin_upper = 0.0;  // min(upper barrier - u); 0 without barriers
  double apriori_K = 0.0;     // energy bound (band sup of f_R) * l1(upper) / m
  bool accepted = false;
  // Extra diagnostics beyond the serialized contract.
  double penalty_sup = 0.0;   // max |band penalty| at the returned iterate
  double order_tol_used = 0.0;
  bool apriori_ok = true;
};

struct PicardResult {
  ScalarField u;
  int iterations = 0;
  double residual_sup = 0.0;
};

// Damped Picard iteration for -c*Lap(u) = F(x, u, grad u) with zero trace:
// each sweep solves the linear Poisson problem at the current reaction values
// and blends by picard_damping. Stops once the sup-norm update is below
// picard_tol and the nodal strong-form residual is below
// picard_tol * 4*sum_i(1/h_i^2); exceeding max_inner throws
// NoConvergenceError.
PicardResult semilinear_picard(const Grid& grid, double c, const NodalReaction& F,
                               const SolverConfig& cfg, const ScalarField& u0);

// Outer fixed point for -M(s)Lap(u) = F with s = |u|_{H1}^2: bisection on
// phi(s) = |u_s|^2 - s, which decreases when M is nondecreasing. The bracket
// is [0, s_hi] with s_hi from the hint (or |u_0|^2 without one); a positive
// phi(s_hi) gets one bracket enlargement before the run fails.
SolveReport kirchhoff_fixed_point(const Grid& grid, const KirchhoffTerm& M,
                                  const NodalReaction& F, const SolverConfig& cfg,
                                  const ScalarField* u0 = nullptr,
                                  std::optional<double> s_hi_hint = std::nullopt);

// Penalized band problem: reaction frozen outside [lower, upper] plus the
// band penalty. Verifies that the converged iterate stayed inside the band up
// to order_tol (OrderingError otherwise) and records the energy bound check.
SolveReport solve_penalized(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                            const SolverConfig& cfg, const TruncationConfig& trunc,
                            const BarrierPair& barriers, const ScalarField* u0 = nullptr);

// Full quasilinear solve: runs solve_penalized and doubles the truncation
// radius until sup|grad u| <= R (GradientBoundError after R_max_doublings).
// At acceptance the gradient clamp is inactive, so the truncated reaction
// coincides with f along the returned solution.
SolveReport solve_quasilinear(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                              const SolverConfig& cfg, const BarrierPair& barriers);

// Resolved band tolerance: cfg.order_tol, or its sup|upper|-scaled default.
double resolve_order_tol(const SolverConfig& cfg, const ScalarField& upper);

}  // namespace kirchhoff
