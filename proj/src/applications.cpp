#include "kirchhoff/applications.hpp"

#include <cmath>
#include <string>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

constexpr int kDeltaScanSteps = 60;

// Golden-section minimum of a convex scalar function after a coarse log-space
// scan locates the basin.
std::pair<double, double> minimize_log_then_golden(const std::function<double(double)>& f,
                                                   double lo, double hi, int scan_points) {
  double best_x = lo;
  double best_f = f(lo);
  const double ratio = std::pow(hi / lo, 1.0 / (scan_points - 1));
  double prev_x = lo;
  double next_x = lo;
  double x = lo;
  for (int k = 1; k < scan_points; ++k) {
    const double xk = lo * std::pow(ratio, k);
    const double fk = f(xk);
    if (fk < best_f) {
      best_f = fk;
      prev_x = x;
      best_x = xk;
      next_x = std::min(hi, xk * ratio);
    }
    x = xk;
  }
  if (best_x == lo) prev_x = lo;
  if (next_x == best_x) next_x = hi;

  double a = prev_x, b = next_x;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Shared delta-halving scan: shrink the principal-eigenfunction scale until
// the subsolution inequality holds against alpha and the barrier order holds.
double scan_delta(const ScalarField& phi1, const ScalarField& upper, const ReactionSpec& f,
                  double alpha) {
  double delta = 1.0;
  for (int k = 0; k <= kDeltaScanSteps; ++k) {
    const ScalarField lower = scaled(phi1, delta);
    if (check_order(lower, upper, 0.0).pass && verify_subsolution(lower, f, alpha, 0.0).pass)
      return delta;
    delta *= 0.5;
  }
  throw InfeasibleError("infeasible: no admissible subsolution scale");
}

}  // namespace

App1Build app1_build(const Grid& grid, const App1Params& params) {
  const ReactionSpec f = make_app1_reaction(params.lam, params.mu, params.q, params.p);
  App1Build out;
  out.e = solve_poisson_unit(grid);
  const FieldNorms en = field_norms(out.e);
  const double c_concave =
      params.lam * std::pow(en.sup_norm, params.q) + params.mu * std::pow(en.grad_sup_norm, params.q);
  const double c_convex = std::pow(en.sup_norm, params.p);
  const auto psi = [&](double S) {
    return std::pow(S, params.q - 1.0) * c_concave + std::pow(S, params.p - 1.0) * c_convex;
  };
  auto [S, psi_min] = minimize_log_then_golden(psi, 1e-6, 1e6, 241);
  out.S = S;
  out.psi_min = psi_min;
  if (psi_min > params.M.floor()) throw InfeasibleError("infeasible: min psi > m");

  out.eig = principal_eigenpair(grid);
  out.alpha = params.M.max_on(1.0);
  const ScalarField upper = scaled(out.e, out.S);
  out.delta = scan_delta(out.eig.phi1, upper, f, out.alpha);
  out.barriers = make_barrier_pair(scaled(out.eig.phi1, out.delta), upper);
  return out;
}

App2Build app2_build(const Grid& grid, const App2Params& params) {
  const ReactionSpec f = make_app2_reaction(params.A, params.B, params.q, params.eta);
  App2Build out;
  out.eig = principal_eigenpair(grid);
  out.alpha = params.M.max_on(1.0);
  const ScalarField upper(grid, params.B, BoundaryTrace::uniform(params.B));
  out.delta = scan_delta(out.eig.phi1, upper, f, out.alpha);
  out.barriers = make_barrier_pair(scaled(out.eig.phi1, out.delta), upper);
  return out;
}

ApplicationReport run_application(const Grid& grid, const AppParams& params,
                                  const SolverConfig& cfg) {
  ApplicationReport rep;
  const KirchhoffTerm* M = nullptr;
  if (const App1Params* p1 = std::get_if<App1Params>(&params)) {
    App1Build b = app1_build(grid, *p1);
    rep.reaction = make_app1_reaction(p1->lam, p1->mu, p1->q, p1->p);
    rep.barriers = std::move(b.barriers);
    rep.S = b.S;
    rep.psi_min = b.psi_min;
    rep.delta = b.delta;
    rep.alpha_build = b.alpha;
    M = &p1->M;
  } else {
    const App2Params& p2 = std::get<App2Params>(params);
    App2Build b = app2_build(grid, p2);
    rep.reaction = make_app2_reaction(p2.A, p2.B, p2.q, p2.eta);
    rep.barriers = std::move(b.barriers);
    rep.delta = b.delta;
    rep.alpha_build = b.alpha;
    M = &p2.M;
  }

  rep.solve = solve_quasilinear(grid, *M, rep.reaction, cfg, rep.barriers);

  const double order_tol = rep.solve.order_tol_used;
  rep.alpha_star = M->max_on(rep.solve.s_star);
  rep.super_check = verify_supersolution(rep.barriers.upper, rep.reaction, M->floor(), order_tol);
  rep.sub_check = verify_subsolution(rep.barriers.lower, rep.reaction, rep.alpha_star, order_tol);
  rep.order_lower = check_order(rep.barriers.lower, rep.solve.u, order_tol);
  rep.order_upper = check_order(rep.solve.u, rep.barriers.upper, order_tol);
  rep.checks_pass = rep.super_check.pass && rep.sub_check.pass && rep.order_lower.pass &&
                    rep.order_upper.pass && rep.solve.accepted;
  return rep;
}

}  // namespace kirchhoff
