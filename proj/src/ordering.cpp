#include "kirchhoff/ordering.hpp"

#include <cmath>
#include <random>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/linalg.hpp"

namespace kirchhoff {

InequalityReport verify_supersolution(const ScalarField& upper, const ReactionSpec& f, double m,
                                      double tol) {
  if (!(m > 0.0)) throw std::invalid_argument("verify_supersolution: need m > 0");
  const ScalarField lap = apply_neg_laplacian(upper);
  const VectorField grad = node_gradient(upper);
  InequalityReport rep;
  for (std::size_t k = 0; k < upper.values.size(); ++k) {
    const Vec x = upper.grid.coord(k);
    const double margin =
        lap.values[k] - f.eval(x, upper.values[k], grad.values[k]) / m;
    if (k == 0 || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_node = k;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

InequalityReport verify_subsolution(const ScalarField& lower, const ReactionSpec& f, double alpha,
                                    double tol) {
  if (!(alpha > 0.0)) throw std::invalid_argument("verify_subsolution: need alpha > 0");
  const ScalarField lap = apply_neg_laplacian(lower);
  const VectorField grad = node_gradient(lower);
  InequalityReport rep;
  for (std::size_t k = 0; k < lower.values.size(); ++k) {
    const Vec x = lower.grid.coord(k);
    const double margin =
        f.eval(x, lower.values[k], grad.values[k]) / alpha - lap.values[k];
    if (k == 0 || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_node = k;
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

OrderReport check_order(const ScalarField& lower, const ScalarField& upper, double tol) {
  if (!(lower.grid == upper.grid)) throw DomainError("check_order: grid mismatch");
  OrderReport rep;
  for (std::size_t k = 0; k < lower.values.size(); ++k) {
    const double gap = upper.values[k] - lower.values[k];
    if (k == 0 || gap < rep.min_gap) {
      rep.min_gap = gap;
      rep.argmin_node = k;
    }
  }
  rep.pass = rep.min_gap >= -tol;
  return rep;
}

CoercivityRay coercivity_ray(const Grid& grid, const KirchhoffTerm& M, const ReactionSpec& f,
                             const TruncationConfig& trunc, const BarrierPair& barriers,
                             const ScalarField& u, const std::vector<double>& ts,
                             double threshold) {
  CoercivityRay ray;
  ray.ts = ts;
  const double vol = grid.cell_volume();
  for (double t : ts) {
    ScalarField w = scaled(u, t);
    w.trace = BoundaryTrace::zero();
    const double s = dirichlet_form(w, w);
    const VectorField grad = node_gradient(w);
    double pairing = M.value(s) * s;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
      const double z = banded_reaction(f, trunc, barriers, k, w.values[k], grad.values[k]);
      const double pen = band_penalty(trunc, barriers, k, w.values[k]);
      pairing += (pen - z) * w.values[k] * vol;
    }
    ray.ratios.push_back(pairing / std::sqrt(s));
  }
  const std::size_t n = ray.ratios.size();
  ray.increasing_tail =
      n >= 3 && ray.ratios[n - 3] < ray.ratios[n - 2] && ray.ratios[n - 2] < ray.ratios[n - 1];
  ray.crossing_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (ray.ratios[k] > threshold) {
      ray.crossing_t = ray.ts[k];
      break;
    }
  }
  return ray;
}

OperatorProbeReport probe_operator_properties(const Grid& grid, const KirchhoffTerm& M,
                                              int trials, std::uint64_t seed,
                                              double coercivity_threshold) {
  if (trials < 1) throw std::invalid_argument("probe_operator_properties: need trials >= 1");
  OperatorProbeReport rep;
  rep.trials = trials;
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  auto random_field = [&]() {
    ScalarField u(grid);
    for (double& v : u.values) v = uniform();
    return u;
  };

  auto potential = [&M](const ScalarField& u) {
    return 0.5 * M.antiderivative(dirichlet_form(u, u));
  };

  bool first = true;
  std::vector<ScalarField> ray_seeds;
  for (int trial = 0; trial < trials; ++trial) {
    const ScalarField u = random_field();
    const ScalarField v = random_field();
    if (static_cast<int>(ray_seeds.size()) < 5) ray_seeds.push_back(u);

    ScalarField d = u;
    for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] -= v.values[k];
    const double term_u = M.value(dirichlet_form(u, u)) * dirichlet_form(u, d);
    const double term_v = M.value(dirichlet_form(v, v)) * dirichlet_form(v, d);
    const double ip = term_u - term_v;
    const double rel = ip / std::max(1.0, std::abs(term_u) + std::abs(term_v));
    if (first || ip < rep.min_monotone_ip) rep.min_monotone_ip = ip;
    if (first || rel < rep.min_monotone_rel) rep.min_monotone_rel = rel;

    ScalarField mid = u;
    for (std::size_t k = 0; k < mid.values.size(); ++k)
      mid.values[k] = 0.5 * (u.values[k] + v.values[k]);
    const double gap = potential(mid) - 0.5 * (potential(u) + potential(v));
    if (first || gap > rep.max_convexity_gap) rep.max_convexity_gap = gap;
    first = false;
  }

  {
    // Same pairing evaluated on an equal pair: the difference field is zero,
    // so every term cancels exactly.
    const ScalarField u = random_field();
    const ScalarField d(grid);
    const double ip_equal = M.value(dirichlet_form(u, u)) * dirichlet_form(u, d) -
                            M.value(dirichlet_form(u, u)) * dirichlet_form(u, d);
    rep.monotone_zero_at_equal = ip_equal == 0.0;
  }

  // Canonical penalized operator for the rays: unit reaction over the band
  // (0, e / sup e) with radius 1 and the default penalty exponent.
  const ReactionSpec unit = make_custom_reaction(
      [](const Vec&, double, const Vec&) { return 1.0; },
      [](const Vec&, double) { return 1.0; }, 0.0);
  ScalarField e = solve_poisson_unit(grid);
  double esup = 0.0;
  for (double x : e.values) esup = std::max(esup, x);
  const BarrierPair barriers = make_barrier_pair(ScalarField(grid), scaled(e, 1.0 / esup));
  const TruncationConfig trunc{1.0, 0.5};
  const std::vector<double> ts{1.0, 2.0, 4.0, 8.0, 16.0};
  rep.coercive_pass = true;
  for (const ScalarField& u : ray_seeds) {
    rep.rays.push_back(
        coercivity_ray(grid, M, unit, trunc, barriers, u, ts, coercivity_threshold));
    const CoercivityRay& ray = rep.rays.back();
    rep.coercive_pass = rep.coercive_pass && ray.increasing_tail && ray.crossing_t > 0.0;
  }

  rep.monotone_pass =
      rep.min_monotone_rel >= -1e-12 && rep.min_monotone_ip > 0.0 && rep.monotone_zero_at_equal;
  rep.convex_pass = rep.max_convexity_gap <= 1e-12;
  rep.pass = rep.monotone_pass && rep.convex_pass && rep.coercive_pass;
  return rep;
}

}  // namespace kirchhoff
