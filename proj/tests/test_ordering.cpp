#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/linalg.hpp"
#include "kirchhoff/ordering.hpp"
#include "support.hpp"

using namespace kirchhoff;

namespace {

ScalarField torsion_field(const Grid& g, double scale) {
  ScalarField u(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.coord(k)[0];
    u.values[k] = scale * 0.5 * x * (1.0 - x);
  }
  return u;
}

ReactionSpec constant_reaction(double c) {
  return make_custom_reaction([c](const Vec&, double, const Vec&) { return c; },
                              [c](const Vec&, double) { return std::abs(c); }, 0.0);
}

}  // namespace

TEST_CASE("the zero field is no supersolution against a unit source") {
  const Grid g = build_grid(1, {1.0}, {99});
  const InequalityReport rep = verify_supersolution(ScalarField(g), constant_reaction(1.0), 1.0, 0.0);
  CHECK(!rep.pass);
  CHECK(rep.worst_margin == -1.0);
}

TEST_CASE("the zero field is a subsolution for a source vanishing at zero") {
  const Grid g = build_grid(1, {1.0}, {99});
  const ReactionSpec f = make_app1_reaction(1.0, 1.0, 0.5, 2.0);
  const InequalityReport rep = verify_subsolution(ScalarField(g), f, 1.0, 0.0);
  CHECK(rep.pass);
  CHECK(rep.worst_margin == 0.0);

  const InequalityReport unit = verify_subsolution(ScalarField(g), constant_reaction(1.0), 1.0, 0.0);
  CHECK(unit.pass);
  CHECK(unit.worst_margin == 1.0);
}

TEST_CASE("a principal-mode bump fails as subsolution once the source is gone") {
  const Grid g = build_grid(1, {1.0}, {99});
  const EigenPair eig = principal_eigenpair(g);
  ScalarField lower = scaled(eig.phi1, 0.01);
  const InequalityReport rep = verify_subsolution(lower, constant_reaction(0.0), 1.0, 0.0);
  CHECK(!rep.pass);
  // margin is -0.01 * lambda1 * phi1, worst where phi1 peaks at one
  CHECK(rep.worst_margin == doctest::Approx(-0.01 * eig.lambda1).epsilon(1e-5));
}

TEST_CASE("the torsion profile is an exact supersolution for its own load") {
  const Grid g = build_grid(1, {1.0}, {99});
  const InequalityReport rep =
      verify_supersolution(torsion_field(g, 1.0), constant_reaction(1.0), 1.0, 1e-9);
  CHECK(rep.pass);
  CHECK(std::abs(rep.worst_margin) <= 1e-9);

  // doubling the profile clears the same load with slack 1
  const InequalityReport twice =
      verify_supersolution(torsion_field(g, 2.0), constant_reaction(1.0), 1.0, 0.0);
  CHECK(twice.pass);
  CHECK(twice.worst_margin == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scaling source and stiffness together leaves the margins untouched") {
  const Grid g = build_grid(1, {1.0}, {49});
  const ScalarField w = torsion_field(g, 3.0);
  const InequalityReport base = verify_supersolution(w, constant_reaction(1.0), 1.0, 0.0);
  const InequalityReport rescaled = verify_supersolution(w, constant_reaction(2.0), 2.0, 0.0);
  CHECK(base.worst_margin == rescaled.worst_margin);
  CHECK(base.worst_node == rescaled.worst_node);

  const InequalityReport sub_base = verify_subsolution(w, constant_reaction(1.0), 1.0, 0.0);
  const InequalityReport sub_rescaled = verify_subsolution(w, constant_reaction(2.0), 2.0, 0.0);
  CHECK(sub_base.worst_margin == sub_rescaled.worst_margin);
}

TEST_CASE("small multiples of the principal mode pass under a concave source") {
  const Grid g = build_grid(1, {1.0}, {99});
  const EigenPair eig = principal_eigenpair(g);
  const ReactionSpec f = make_app1_reaction(1.0, 0.0, 0.5, 2.0);

  const InequalityReport tiny = verify_subsolution(scaled(eig.phi1, 1e-5), f, 1.0, 0.0);
  CHECK(tiny.pass);
  CHECK(tiny.worst_margin > 0.0);

  const InequalityReport big = verify_subsolution(scaled(eig.phi1, 1.0), f, 1.0, 0.0);
  CHECK(!big.pass);
  CHECK(big.worst_margin < -1.0);
}

TEST_CASE("a two-dimensional bowl dominates loads below its interior curvature") {
  const Grid g = build_grid(2, {1.0, 1.0}, {15, 15});
  ScalarField bowl(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec x = g.coord(k);
    bowl.values[k] = x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]);
  }
  const double h = g.h[0];
  const double lap_min = 4.0 * h * (1.0 - h);  // corner value of 2*(x(1-x)+y(1-y))
  CHECK(verify_supersolution(bowl, constant_reaction(lap_min - 0.03), 1.0, 0.0).pass);
  CHECK(!verify_supersolution(bowl, constant_reaction(lap_min + 0.03), 1.0, 0.0).pass);
}

TEST_CASE("inequality checks validate their constants") {
  const Grid g = build_grid(1, {1.0}, {9});
  const ScalarField w(g);
  CHECK_THROWS_AS(verify_supersolution(w, constant_reaction(1.0), 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(verify_supersolution(w, constant_reaction(1.0), -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(verify_subsolution(w, constant_reaction(1.0), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("order check passes equal fields and flags a reversed pair") {
  const Grid g = build_grid(1, {1.0}, {99});
  const ScalarField w = torsion_field(g, 1.0);
  const OrderReport equal = check_order(w, w, 0.0);
  CHECK(equal.pass);
  CHECK(equal.min_gap == 0.0);

  const OrderReport reversed = check_order(ScalarField(g, 2.0), ScalarField(g, 1.0), 0.0);
  CHECK(!reversed.pass);
  CHECK(reversed.min_gap == -1.0);

  // slack semantics: a half-tolerance dip passes, a double one does not
  const OrderReport shallow = check_order(ScalarField(g, 5e-4), ScalarField(g), 1e-3);
  CHECK(shallow.pass);
  CHECK(shallow.min_gap == -5e-4);
  CHECK(!check_order(ScalarField(g, 2e-3), ScalarField(g), 1e-3).pass);

  const OrderReport near_wall = check_order(torsion_field(g, 0.9), w, 0.0);
  CHECK(near_wall.pass);
  CHECK(near_wall.argmin_node == 0);  // the gap 0.1*e pinches at the first node

  CHECK_THROWS_AS(check_order(ScalarField(build_grid(1, {1.0}, {49})), w, 0.0), DomainError);
}

TEST_CASE("coercivity ray matches its closed form along the torsion direction") {
  const Grid g = build_grid(1, {1.0}, {99});
  const ScalarField e = torsion_field(g, 1.0);
  const BarrierPair band = make_barrier_pair(ScalarField(g), torsion_field(g, 8.0));
  const TruncationConfig trunc{1.0, 0.5};
  const KirchhoffTerm M = KirchhoffTerm::affine(1.0, 1.0);
  const std::vector<double> ts{1.0, 2.0, 4.0, 8.0, 16.0};

  const CoercivityRay ray = coercivity_ray(g, M, constant_reaction(1.0), trunc, band, e, ts, 1.0);
  REQUIRE(ray.ratios.size() == 5);

  // mirror: M(t^2 c) t^2 c - t * integral(e) + penalty term (only at t = 16,
  // where t*e tops the barrier by 8e)
  const double c = dirichlet_form(e, e);
  const double s1 = integrate_product(e, ScalarField(g, 1.0));
  double p16 = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    p16 += std::sqrt(8.0 * e.values[k]) * 16.0 * e.values[k] * g.cell_volume();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double s = t * t * c;
    const double expected = (M.value(s) * s - t * s1 + (t == 16.0 ? p16 : 0.0)) / std::sqrt(s);
    CHECK(ray.ratios[i] == doctest::Approx(expected).epsilon(1e-12));
  }

  // mesh-free anchors for the same ladder
  const double anchors[] = {0.02405, 0.48113, 2.4056, 14.337, 103.12};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(ray.ratios[i] == doctest::Approx(anchors[i]).epsilon(0.02));

  CHECK(ray.increasing_tail);
  CHECK(ray.crossing_t == 4.0);

  const CoercivityRay high = coercivity_ray(g, M, constant_reaction(1.0), trunc, band, e, ts, 200.0);
  CHECK(high.crossing_t == 0.0);

  const CoercivityRay stub =
      coercivity_ray(g, M, constant_reaction(1.0), trunc, band, e, {1.0, 2.0}, 1.0);
  CHECK(!stub.increasing_tail);
}

TEST_CASE("operator probe passes the growing-stiffness law on the interval") {
  const Grid g = build_grid(1, {1.0}, {63});
  const OperatorProbeReport rep = probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 100, 1);
  CHECK(rep.trials == 100);
  CHECK(rep.seed == 1);
  CHECK(rep.monotone_pass);
  CHECK(rep.min_monotone_ip > 0.0);
  CHECK(rep.min_monotone_rel >= -1e-12);
  CHECK(rep.monotone_zero_at_equal);
  CHECK(rep.convex_pass);
  CHECK(rep.max_convexity_gap <= 1e-12);
  CHECK(rep.coercive_pass);
  CHECK(rep.pass);
  REQUIRE(rep.rays.size() == 5);
  for (const CoercivityRay& ray : rep.rays) {
    CHECK(ray.ts == std::vector<double>{1.0, 2.0, 4.0, 8.0, 16.0});
    CHECK(ray.increasing_tail);
    CHECK(ray.crossing_t > 0.0);
  }
}

TEST_CASE("operator probe stays green for a constant stiffness") {
  const Grid g = build_grid(1, {1.0}, {63});
  const OperatorProbeReport rep = probe_operator_properties(g, KirchhoffTerm::affine(2.0, 0.0), 50, 9);
  CHECK(rep.pass);
  CHECK(rep.max_convexity_gap < 0.0);  // quadratic potential: strictly negative gaps
}

TEST_CASE("operator probe is deterministic in its seed") {
  const Grid g = build_grid(1, {1.0}, {63});
  const OperatorProbeReport a = probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 20, 42);
  const OperatorProbeReport b = probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 20, 42);
  CHECK(a.min_monotone_ip == b.min_monotone_ip);
  CHECK(a.min_monotone_rel == b.min_monotone_rel);
  CHECK(a.max_convexity_gap == b.max_convexity_gap);
  REQUIRE(a.rays.size() == b.rays.size());
  for (std::size_t r = 0; r < a.rays.size(); ++r)
    for (std::size_t i = 0; i < a.rays[r].ratios.size(); ++i)
      CHECK(a.rays[r].ratios[i] == b.rays[r].ratios[i]);

  const OperatorProbeReport c = probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 20, 43);
  CHECK(c.min_monotone_ip != a.min_monotone_ip);

  const OperatorProbeReport few = probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 3, 5);
  CHECK(few.rays.size() == 3);
  CHECK_THROWS_AS(probe_operator_properties(g, KirchhoffTerm::affine(1.0, 1.0), 0, 1),
                  std::invalid_argument);
}
