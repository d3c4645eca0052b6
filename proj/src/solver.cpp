#include "kirchhoff/solver.hpp"

#include <algorithm>
#include <cmath>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

double stencil_scale(const Grid& g) {
  double s = 4.0 / (g.h[0] * g.h[0]);
  if (g.dim == 2) s += 4.0 / (g.h[1] * g.h[1]);
  return s;
}

double strong_residual_sup(double c, const NodalReaction& F, const ScalarField& u) {
  const ScalarField lap = apply_neg_laplacian(u);
  const VectorField grad = node_gradient(u);
  double res = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k)
    res = std::max(res, std::abs(c * lap.values[k] - F(k, u.values[k], grad.values[k])));
  return res;
}

}  // namespace

double resolve_order_tol(const SolverConfig& cfg, const ScalarField& upper) {
  if (cfg.order_tol > 0.0) return cfg.order_tol;
  double sup = 0.0;
  for (double v : upper.values) sup = std::max(sup, std::abs(v));
  return std::max(1e-6 * sup, 1e-12);
}

PicardResult semilinear_picard(const Grid& grid, double c, const NodalReaction& F,
                               const SolverConfig& cfg, const ScalarField& u0) {
  if (!(c > 0.0)) throw SolveError("semilinear_picard: coefficient must be positive");
  if (!(cfg.picard_damping > 0.0 && cfg.picard_damping <= 1.0))
    throw SolveError("semilinear_picard: damping must lie in (0, 1]");
  const LinearOperator A = neg_laplacian_operator(grid);
  const double theta = cfg.picard_damping;
  const double res_target = cfg.picard_tol * stencil_scale(grid);

  ScalarField u = u0.grid == grid ? u0 : ScalarField(grid);
  u.trace = BoundaryTrace::zero();
  ScalarField rhs(grid);
  ScalarField w(grid);
  double last_update = 0.0;
  double last_residual = 0.0;
  for (int it = 1; it <= cfg.max_inner; ++it) {
    const VectorField grad = node_gradient(u);
    for (std::size_t k = 0; k < u.values.size(); ++k)
      rhs.values[k] = F(k, u.values[k], grad.values[k]) / c;
    w = cg_solve(A, rhs, cfg.lin_tol, cfg.max_linear, &w);
    last_update = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
      const double next = (1.0 - theta) * u.values[k] + theta * w.values[k];
      last_update = std::max(last_update, std::abs(next - u.values[k]));
      u.values[k] = next;
    }
    if (last_update <= cfg.picard_tol) {
      last_residual = strong_residual_sup(c, F, u);
      if (last_residual <= res_target) return {u, it, last_residual};
    }
  }
  throw NoConvergenceError("semilinear_picard: no convergence within max_inner",
                           std::max(last_update, last_residual), cfg.max_inner);
}

SolveReport kirchhoff_fixed_point(const Grid& grid, const KirchhoffTerm& M,
                                  const NodalReaction& F, const SolverConfig& cfg,
                                  const ScalarField* u0, std::optional<double> s_hi_hint) {
  SolveReport rep;
  int inner_total = 0;
  int evals = 0;
  ScalarField warm = u0 && u0->grid == grid ? *u0 : ScalarField(grid);
  warm.trace = BoundaryTrace::zero();

  // One bisection probe: solve at coefficient M(s) and report phi(s) = |u|^2 - s.
  auto probe = [&](double s) {
    const PicardResult r = semilinear_picard(grid, M.value(s), F, cfg, warm);
    warm = r.u;
    inner_total += r.iterations;
    ++evals;
    return std::pair<double, PicardResult>(dirichlet_form(r.u, r.u) - s, r);
  };
  auto finish = [&](double s, const PicardResult& r) {
    rep.u = r.u;
    rep.s_star = s;
    rep.residual_sup = r.residual_sup;
    rep.iters_inner = inner_total;
    rep.iters_outer = evals;
    rep.grad_sup = field_norms(r.u).grad_sup_norm;
    rep.accepted = true;
    return rep;
  };

  auto [phi0, r0] = probe(0.0);
  if (std::abs(phi0) <= cfg.outer_tol) return finish(0.0, r0);

  double hi = s_hi_hint.value_or(phi0);
  if (!(hi > 0.0)) hi = phi0;
  auto [phi_hi, r_hi] = probe(hi);
  if (std::abs(phi_hi) <= cfg.outer_tol) return finish(hi, r_hi);
  if (phi_hi > 0.0) {
    hi *= 4.0;  // one bracket enlargement, then give up
    std::tie(phi_hi, r_hi) = probe(hi);
    if (std::abs(phi_hi) <= cfg.outer_tol) return finish(hi, r_hi);
    if (phi_hi > 0.0)
      throw SolveError("kirchhoff_fixed_point: bisection bracket failed (phi(s_hi) > 0)");
  }

  double lo = 0.0;
  double last_phi = phi_hi;
  while (evals < cfg.max_outer) {
    const double mid = 0.5 * (lo + hi);
    auto [phi_mid, r_mid] = probe(mid);
    if (std::abs(phi_mid) <= cfg.outer_tol) return finish(mid, r_mid);
    last_phi = phi_mid;
    (phi_mid > 0.0 ? lo : hi) = mid;
  }
  throw NoConvergenceError("kirchhoff_fixed_point: no convergence within max_outer",
                           std::abs(last_phi), evals);
}

namespace {

// Largest envelope value over the barrier band, sampled on a short t-ladder
// per node (the envelope is continuous and the band is one-dimensional in t).
double band_envelope_sup(const ReactionSpec& f, const BarrierPair& barriers) {
  constexpr int kSamples = 9;
  double sup = 0.0;
  const std::size_t n = barriers.lower.values.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec x = barriers.lower.grid.coord(k);
    const double lo = barriers.lower.values[k];
    const double up = barriers.upper.values[k];
    for (int s = 0; s < kSamples; ++s) {
      const double t = lo + (up - lo) * static_cast<double>(s) / (kSamples - 1);
      sup = std::max(sup, f.envelope(x, t));
    }
  }
  return sup;
}

// Sup bound of the truncated reaction over the band: envelope times the
// clamped-gradient growth factor (1 + R^eta * dim^{eta/2}).
double band_reaction_sup(const ReactionSpec& f, const TruncationConfig& trunc,
                         const BarrierPair& barriers) {
  const double dim = static_cast<double>(barriers.lower.grid.dim);
  return band_envelope_sup(f, barriers) *
         (1.0 + std::pow(trunc.radius, f.gradient_exponent) *
                    std::pow(dim, 0.5 * f.gradient_exponent));
}

}  // namespace

SolveReport solve_penalized(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                            const SolverConfig& cfg, const TruncationConfig& trunc,
                            const BarrierPair& barriers, const ScalarField* u0) {
  if (!(barriers.lower.grid == grid)) throw DomainError("solve_penalized: grid mismatch");
  const double order_tol = resolve_order_tol(cfg, barriers.upper);

  const NodalReaction F = [&f, &trunc, &barriers](std::size_t node, double t, const Vec& y) {
    return banded_reaction(f, trunc, barriers, node, t, y) -
           band_penalty(trunc, barriers, node, t);
  };

  // Coercivity-derived bracket: the banded reaction is bounded by the band
  // sup of f_R, the penalty by one band-width to the chosen power.
  const double f_sup = band_reaction_sup(f, trunc, barriers);
  double band_width = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    band_width = std::max(band_width, barriers.upper.values[k] - barriers.lower.values[k]);
  const double c_band = f_sup + std::pow(band_width, trunc.penalty_exponent);
  const double l1_upper = field_norms(barriers.upper).l1_norm;
  const double s_hi =
      (c_band * grid.domain_volume() / M.floor()) * std::max(1.0, l1_upper) * 2.0;

  SolveReport rep = kirchhoff_fixed_point(grid, M, F, cfg, u0, s_hi);

  rep.margin_lower = 0.0;
  rep.margin_upper = 0.0;
  std::size_t worst_node = 0;
  double worst = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double mlo = rep.u.values[k] - barriers.lower.values[k];
    const double mup = barriers.upper.values[k] - rep.u.values[k];
    if (first || mlo < rep.margin_lower) rep.margin_lower = mlo;
    if (first || mup < rep.margin_upper) rep.margin_upper = mup;
    const double m = std::min(mlo, mup);
    if (first || m < worst) {
      worst = m;
      worst_node = k;
    }
    first = false;
  }
  if (worst < -order_tol)
    throw OrderingError("solve_penalized: iterate escaped the barrier band", worst_node, worst);

  rep.penalty_sup = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    rep.penalty_sup = std::max(rep.penalty_sup,
                               std::abs(band_penalty(trunc, barriers, k, rep.u.values[k])));

  const double c1 = band_reaction_sup(f, trunc, barriers);
  rep.apriori_K = c1 * l1_upper / M.floor();
  rep.apriori_ok =
      M.floor() * rep.s_star <= c1 * l1_upper + 1e-12 * std::max(1.0, c1 * l1_upper);
  rep.R_final = trunc.radius;
  rep.order_tol_used = order_tol;
  rep.accepted = rep.apriori_ok;
  return rep;
}

SolveReport solve_quasilinear(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                              const SolverConfig& cfg, const BarrierPair& barriers) {
  const double barrier_grad = std::max(field_norms(barriers.lower).grad_sup_norm,
                                       field_norms(barriers.upper).grad_sup_norm);
  double radius = cfg.R_initial > 0.0 ? cfg.R_initial : std::max(1.0, barrier_grad);
  if (radius < barrier_grad * (1.0 - 1e-12))
    throw std::invalid_argument(
        "solve_quasilinear: R_initial must dominate the barrier gradients");
  if (!(cfg.R_growth > 1.0))
    throw std::invalid_argument("solve_quasilinear: R_growth must exceed 1");

  ScalarField warm(grid);
  double last_grad = 0.0;
  for (int attempt = 0; attempt <= cfg.R_max_doublings; ++attempt) {
    const TruncationConfig trunc{radius, cfg.penalty_exponent};
    SolveReport rep = solve_penalized(grid, M, f, cfg, trunc, barriers, &warm);
    if (rep.grad_sup <= radius) return rep;
    warm = rep.u;
    last_grad = rep.grad_sup;
    radius *= cfg.R_growth;
  }
  throw GradientBoundError("solve_quasilinear: gradient bound not reached within doubling budget",
                           last_grad, radius / cfg.R_growth);
}

}  // namespace kirchhoff
