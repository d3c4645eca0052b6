#pragma once

#include <variant>

#include "kirchhoff/linalg.hpp"
#include "kirchhoff/nonlinearity.hpp"
#include "kirchhoff/ordering.hpp"
#include "kirchhoff/solver.hpp"

namespace kirchhoff {

// Concave-convex reaction lam*|u|^q + |u|^p + mu*|grad u|^q.
struct App1Params {
  double lam = 0.1;
  double mu = 0.1;
  double q = 0.5;
  double p = 2.0;
  KirchhoffTerm M = KirchhoffTerm::affine(1.0, 0.0);
};

// Logistic reaction A*u^q*(B-u) + |grad u|^eta with ceiling B.
struct App2Params {
  double A = 10.0;
  double B = 1.0;
  double q = 0.5;
  double eta = 2.0;
  KirchhoffTerm M = KirchhoffTerm::affine(1.0, 0.0);
};

struct App1Build {
  BarrierPair barriers;
  ScalarField e;          // torsion field -Lap e = 1
  EigenPair eig;
  double S = 0.0;         // upper barrier scale: upper = S * e
  double psi_min = 0.0;   // minimized feasibility functional
  double delta = 0.0;     // lower barrier scale: lower = delta * phi1
  double alpha = 0.0;     // stiffness bound used by the subsolution scan
};

struct App2Build {
  BarrierPair barriers;   // (delta * phi1, constant B with trace B)
  EigenPair eig;
  double delta = 0.0;
  double alpha = 0.0;
};

// Builds the App1 barrier pair: the upper scale S minimizes
//   psi(S) = S^(q-1) (lam |e|_inf^q + mu |grad e|_inf^q) + S^(p-1) |e|_inf^p
// by log-scan plus golden section, feasible iff min psi <= floor of M
// (InfeasibleError otherwise); the lower scale comes from halving delta until
// delta*phi1 passes the subsolution test with alpha = max M over [0,1] and
// stays below the upper barrier.
App1Build app1_build(const Grid& grid, const App1Params& params);

// Builds the App2 barrier pair: constant upper barrier B (trace B) and the
// same delta-halving scan for the lower barrier.
App2Build app2_build(const Grid& grid, const App2Params& params);

using AppParams = std::variant<App1Params, App2Params>;

struct ApplicationReport {
  SolveReport solve;
  ReactionSpec reaction;
  BarrierPair barriers;
  double S = 0.0;             // 0 for App2
  double psi_min = 0.0;       // 0 for App2
  double delta = 0.0;
  double alpha_build = 0.0;   // max M over [0,1], used by the barrier scan
  double alpha_star = 0.0;    // max M over [0, s_star], used post hoc
  InequalityReport super_check;  // against m = floor of M
  InequalityReport sub_check;    // against alpha_star
  OrderReport order_lower;       // lower barrier vs solution
  OrderReport order_upper;       // solution vs upper barrier
  bool checks_pass = false;
};

// Builds the barriers, runs the quasilinear solve with the derived truncation
// radius, then re-verifies both barrier inequalities and the ordering post
// hoc (the subsolution inequality against alpha_star = max M over [0, s_star]).
ApplicationReport run_application(const Grid& grid, const AppParams& params,
                                  const SolverConfig& cfg);

}  // namespace kirchhoff
