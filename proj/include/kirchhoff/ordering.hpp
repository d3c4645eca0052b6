#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kirchhoff/grid.hpp"
#include "kirchhoff/nonlinearity.hpp"

namespace kirchhoff {

struct InequalityReport {
  bool pass = false;
  std::size_t worst_node = 0;
  double worst_margin = 0.0;  // min over nodes of (satisfied side - required side)
};

struct OrderReport {
  bool pass = false;
  double min_gap = 0.0;
  std::size_t argmin_node = 0;
};

// Discrete supersolution test: (-Lap upper)(x_i) >= (1/m) f(x_i, upper, grad upper) - tol
// at every interior node; the margin is the left side minus the right side.
InequalityReport verify_supersolution(const ScalarField& upper, const ReactionSpec& f, double m,
                                      double tol);

// Discrete subsolution test: (-Lap lower)(x_i) <= (1/alpha) f(...) + tol;
// the margin is (1/alpha) f - (-Lap lower).
InequalityReport verify_subsolution(const ScalarField& lower, const ReactionSpec& f, double alpha,
                                    double tol);

// Nodewise gap check lower <= upper + tol.
OrderReport check_order(const ScalarField& lower, const ScalarField& upper, double tol);

struct CoercivityRay {
  std::vector<double> ts;
  std::vector<double> ratios;       // <B(t u), t u> / |t u|_{H1}
  bool increasing_tail = false;     // strictly increasing over the last three t
  double crossing_t = 0.0;          // first t whose ratio exceeds the threshold (0: none)
};

// Rayleigh-type ray probe of the penalized operator
//   <B(w), v> = M(|w|^2) a(w, v) - sum z(x, w, grad w) v + sum penalty(x, w) v
// along w = t*u for the given t ladder.
CoercivityRay coercivity_ray(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                             const TruncationConfig& trunc, const BarrierPair& barriers,
                             const ScalarField& u, const std::vector<double>& ts,
                             double threshold);

struct OperatorProbeReport {
  int trials = 0;
  std::uint64_t seed = 0;
  double min_monotone_ip = 0.0;       // min over pairs of <L u - L v, u - v>
  double min_monotone_rel = 0.0;      // same, relative to the term magnitudes
  bool monotone_zero_at_equal = false;
  double max_convexity_gap = 0.0;     // max of G(mid) - (G(u)+G(v))/2 (<= 0 expected)
  std::vector<CoercivityRay> rays;
  bool monotone_pass = false;
  bool convex_pass = false;
  bool coercive_pass = false;
  bool pass = false;
};

// Seeded finite probes of the weighted Dirichlet operator
// <L u, v> = M(|u|^2) a(u, v): monotonicity over random pairs, midpoint
// convexity of the potential G(u) = antiderivative(|u|^2)/2, and coercivity
// rays of a canonical penalized operator (f = 1, barriers (0, e/sup e),
// radius 1, penalty exponent 1/2) at t in {1, 2, 4, 8, 16}.
OperatorProbeReport probe_operator_properties(const Grid& grid, const KirchhoffTerm& M,
                                              int trials, std::uint64_t seed,
                                              double coercivity_threshold = 1.0);

}  // namespace kirchhoff
