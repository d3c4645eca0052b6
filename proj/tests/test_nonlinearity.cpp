#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/grid.hpp"
#include "kirchhoff/nonlinearity.hpp"
#include "support.hpp"

using namespace kirchhoff;

TEST_CASE("affine stiffness term evaluates value, antiderivative, floor") {
  const KirchhoffTerm M = KirchhoffTerm::affine(1.0, 2.0);
  CHECK(M.value(0.0) == 1.0);
  CHECK(M.value(3.0) == 7.0);
  CHECK(M.antiderivative(0.0) == 0.0);
  CHECK(M.antiderivative(2.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(M.floor() == 1.0);
  CHECK(M.max_on(5.0) == 11.0);

  CHECK_THROWS_AS(KirchhoffTerm::affine(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::affine(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::affine(1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(M.value(-0.1), std::domain_error);
  CHECK_THROWS_AS(M.antiderivative(-1.0), std::domain_error);
}

TEST_CASE("tabulated stiffness term interpolates and extrapolates by last slope") {
  const KirchhoffTerm M = KirchhoffTerm::tabulated({{0.0, 1.0}, {1.0, 2.0}, {3.0, 2.5}});
  CHECK(M.value(0.0) == 1.0);
  CHECK(M.value(0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(M.value(2.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(M.value(5.0) == doctest::Approx(3.0).epsilon(1e-15));  // slope 0.25 past the last knot
  CHECK(M.antiderivative(1.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(M.antiderivative(3.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(M.antiderivative(5.0) == doctest::Approx(11.5).epsilon(1e-14));
  CHECK(M.floor() == 1.0);
  CHECK(M.max_on(2.0) == doctest::Approx(2.25).epsilon(1e-15));

  CHECK_THROWS_AS(KirchhoffTerm::tabulated({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::tabulated({{0.5, 1.0}, {1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::tabulated({{0.0, 0.0}, {1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::tabulated({{0.0, 1.0}, {1.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(KirchhoffTerm::tabulated({{0.0, 1.0}, {0.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("first model reaction matches its closed form and parameter gates") {
  const ReactionSpec f = make_app1_reaction(0.1, 0.2, 0.5, 2.0);
  CHECK(f.gradient_exponent == 0.5);
  const Vec x{0.3, 0.0};
  CHECK(f.eval(x, 4.0, {0.25, 0.0}) == doctest::Approx(16.3).epsilon(1e-14));
  CHECK(f.eval(x, 0.0, {0.0, 0.0}) == 0.0);
  CHECK(f.envelope(x, 4.0) == doctest::Approx(16.4).epsilon(1e-14));

  CHECK_THROWS_AS(make_app1_reaction(1.0, 1.0, 0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app1_reaction(1.0, 1.0, 1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app1_reaction(1.0, 1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app1_reaction(-1.0, 1.0, 0.5, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app1_reaction(1.0, -1.0, 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("second model reaction vanishes outside the logistic window") {
  const ReactionSpec f = make_app2_reaction(2.0, 1.0, 0.5, 1.0);
  CHECK(f.gradient_exponent == 1.0);
  const Vec x{0.5, 0.5};
  CHECK(f.eval(x, 0.25, {0.5, 0.0}) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(f.eval(x, 1.0, {0.0, 0.0}) == 0.0);   // zero at the ceiling with flat gradient
  CHECK(f.eval(x, 1.0, {0.5, 0.0}) == 0.5);   // only the gradient part survives
  CHECK(f.eval(x, -1.0, {0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.eval(x, 2.0, {0.0, 0.0}) == 0.0);
  CHECK(f.envelope(x, 0.25) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(f.envelope(x, -3.0) == 1.0);
  CHECK(f.envelope(x, 5.0) == 1.0);

  CHECK_THROWS_AS(make_app2_reaction(1.0, 0.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app2_reaction(-1.0, 1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_app2_reaction(1.0, 1.0, 0.5, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(make_app2_reaction(1.0, 1.0, 0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_custom_reaction({}, {}, 3.0), std::invalid_argument);
}

TEST_CASE("growth envelope audit accepts both model reactions") {
  const auto [slack1, min1] = check_envelope(make_app1_reaction(1.0, 1.0, 0.5, 3.0), 10000, 7);
  CHECK(slack1 >= 0.0);
  CHECK(min1 >= 0.0);

  const auto [slack2, min2] = check_envelope(make_app2_reaction(3.0, 2.0, 0.25, 2.0), 10000, 7);
  CHECK(slack2 >= 0.0);
  CHECK(min2 >= 0.0);
}

TEST_CASE("growth envelope audit flags a reaction that outruns its own bound") {
  const ReactionSpec bad = make_custom_reaction(
      [](const Vec&, double, const Vec&) { return 10.0; },
      [](const Vec&, double) { return 1.0; }, 0.0);
  const auto [slack, minval] = check_envelope(bad, 100, 3);
  CHECK(slack < 0.0);
  CHECK(minval == 10.0);

  const ReactionSpec signed_f = make_custom_reaction(
      [](const Vec&, double t, const Vec&) { return t; },
      [](const Vec&, double t) { return std::abs(t) + 1.0; }, 0.0);
  CHECK(check_envelope(signed_f, 1000, 3).second < 0.0);
}

TEST_CASE("gradient clamp is the componentwise projection onto the box") {
  CHECK_THROWS_AS(clamp_gradient({1.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(clamp_gradient({1.0, 0.0}, -1.0), std::invalid_argument);

  oracle::Uniform rnd(41);
  const double radii[] = {0.5, 1.0, 3.0};
  for (int k = 0; k < 10000; ++k) {
    const double R = radii[k % 3];
    const Vec y{rnd(-8.0, 8.0), rnd(-8.0, 8.0)};
    const Vec z{rnd(-8.0, 8.0), rnd(-8.0, 8.0)};
    const Vec yc = clamp_gradient(y, R);
    const Vec zc = clamp_gradient(z, R);

    // no-op inside the box
    if (std::abs(y[0]) <= R && std::abs(y[1]) <= R) {
      CHECK(yc[0] == y[0]);
      CHECK(yc[1] == y[1]);
    }
    // sup norm lands at min(R, |y|_inf)
    const double sup = std::max(std::abs(yc[0]), std::abs(yc[1]));
    CHECK(sup == std::min(R, std::max(std::abs(y[0]), std::abs(y[1]))));
    // idempotent
    const Vec ycc = clamp_gradient(yc, R);
    CHECK(ycc[0] == yc[0]);
    CHECK(ycc[1] == yc[1]);
    // odd
    const Vec yn = clamp_gradient({-y[0], -y[1]}, R);
    CHECK(yn[0] == -yc[0]);
    CHECK(yn[1] == -yc[1]);
    // nonexpansive in sup norm
    const double dc = std::max(std::abs(yc[0] - zc[0]), std::abs(yc[1] - zc[1]));
    const double d = std::max(std::abs(y[0] - z[0]), std::abs(y[1] - z[1]));
    CHECK(dc <= d);
  }
}

TEST_CASE("truncated reaction is frozen past the radius and keeps a uniform bound") {
  const ReactionSpec f = make_app1_reaction(1.0, 1.0, 0.5, 2.0);
  const TruncationConfig trunc{1.0, 0.5};
  const Vec x{0.4, 0.6};

  CHECK(truncated_reaction(f, trunc, x, 2.0, {0.3, -0.6}) == f.eval(x, 2.0, {0.3, -0.6}));
  // constant along each axis beyond the radius
  CHECK(truncated_reaction(f, trunc, x, 2.0, {1.5, 0.2}) ==
        truncated_reaction(f, trunc, x, 2.0, {7.0, 0.2}));
  CHECK(truncated_reaction(f, trunc, x, 2.0, {0.2, -1.5}) ==
        truncated_reaction(f, trunc, x, 2.0, {0.2, -9.0}));

  oracle::Uniform rnd(11);
  for (int k = 0; k < 10000; ++k) {
    const double t = rnd(-4.0, 4.0);
    const Vec y{rnd(-20.0, 20.0), rnd(-20.0, 20.0)};
    const double val = truncated_reaction(f, trunc, x, t, y);
    const double cap =
        f.envelope(x, t) *
        (1.0 + std::pow(trunc.radius * std::sqrt(2.0), f.gradient_exponent));
    CHECK(val <= cap * (1.0 + 1e-12));
  }
}

TEST_CASE("barrier pair caches exact gradients and validates its inputs") {
  const Grid g = build_grid(1, {1.0}, {99});
  ScalarField lower(g);
  ScalarField upper(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.coord(k)[0];
    upper.values[k] = 8.0 * 0.5 * x * (1.0 - x);
  }
  const BarrierPair b = make_barrier_pair(lower, upper);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.coord(k)[0];
    CHECK(b.lower_grad.values[k][0] == 0.0);
    CHECK(b.upper_grad.values[k][0] == doctest::Approx(8.0 * (0.5 - x)).epsilon(1e-12));
    CHECK(b.upper_grad.values[k][1] == 0.0);
  }

  const Grid g2 = build_grid(1, {1.0}, {49});
  CHECK_THROWS_AS(make_barrier_pair(ScalarField(g2), upper), DomainError);

  ScalarField lifted(g, 0.0, BoundaryTrace::uniform(0.5));
  CHECK_THROWS_AS(make_barrier_pair(lifted, upper), std::invalid_argument);

  ScalarField sunk(g, 1.0, BoundaryTrace::uniform(-1.0));
  CHECK_THROWS_AS(make_barrier_pair(lower, sunk), std::invalid_argument);

  CHECK_THROWS_AS(make_barrier_pair(ScalarField(g, 1.0), ScalarField(g, 0.5, BoundaryTrace::uniform(0.5))),
                  std::invalid_argument);
}

TEST_CASE("banded reaction freezes at the barriers and keeps ties live") {
  const Grid g = build_grid(1, {1.0}, {99});
  ScalarField lower(g);
  ScalarField upper(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.coord(k)[0];
    upper.values[k] = 8.0 * 0.5 * x * (1.0 - x);
  }
  const BarrierPair b = make_barrier_pair(lower, upper);
  const ReactionSpec f = make_app1_reaction(1.0, 1.0, 0.5, 2.0);
  const TruncationConfig trunc{1.0, 0.5};
  const std::size_t node = 30;
  const Vec x = g.coord(node);
  const double up = upper.values[node];

  // below the band: frozen at the lower barrier with its own gradient
  CHECK(banded_reaction(f, trunc, b, node, -5.0, {9.0, 9.0}) == f.eval(x, 0.0, {0.0, 0.0}));
  CHECK(banded_reaction(f, trunc, b, node, -5.0, {9.0, 9.0}) ==
        banded_reaction(f, trunc, b, node, -0.01, {1.0, -4.0}));
  // above the band: frozen at the upper barrier, independent of t and y
  const double frozen = truncated_reaction(f, trunc, x, up, b.upper_grad.values[node]);
  CHECK(banded_reaction(f, trunc, b, node, up + 1.0, {2.0, 2.0}) == frozen);
  CHECK(banded_reaction(f, trunc, b, node, up + 1.0, {2.0, 2.0}) ==
        banded_reaction(f, trunc, b, node, up + 100.0, {-3.0, 0.5}));
  // exact ties keep the supplied state
  CHECK(banded_reaction(f, trunc, b, node, up, {0.3, 0.0}) ==
        truncated_reaction(f, trunc, x, up, {0.3, 0.0}));
  CHECK(banded_reaction(f, trunc, b, node, 0.0, {0.3, 0.0}) ==
        truncated_reaction(f, trunc, x, 0.0, {0.3, 0.0}));
  // inside the band the reaction passes straight through
  const double mid = 0.5 * up;
  CHECK(banded_reaction(f, trunc, b, node, mid, {0.7, 0.0}) ==
        truncated_reaction(f, trunc, x, mid, {0.7, 0.0}));
}

TEST_CASE("band penalty vanishes on the band, pins its tails, grows with t") {
  const Grid g = build_grid(1, {1.0}, {9});
  const BarrierPair b = make_barrier_pair(ScalarField(g), ScalarField(g, 2.0, BoundaryTrace::uniform(2.0)));
  const TruncationConfig trunc{1.0, 0.5};

  CHECK(band_penalty(trunc, b, 4, 0.0) == 0.0);
  CHECK(band_penalty(trunc, b, 4, 1.3) == 0.0);
  CHECK(band_penalty(trunc, b, 4, 2.0) == 0.0);
  CHECK(band_penalty(trunc, b, 4, 2.44) == doctest::Approx(std::sqrt(0.44)).epsilon(1e-14));
  CHECK(band_penalty(trunc, b, 4, -0.25) == doctest::Approx(-0.5).epsilon(1e-14));

  oracle::Uniform rnd(23);
  for (int k = 0; k < 10000; ++k) {
    double t1 = rnd(-3.0, 5.0), t2 = rnd(-3.0, 5.0);
    if (t1 > t2) std::swap(t1, t2);
    const double p1 = band_penalty(trunc, b, 4, t1);
    const double p2 = band_penalty(trunc, b, 4, t2);
    CHECK(p1 <= p2);
    CHECK((t1 >= 0.0 || p1 < 0.0));
    CHECK((t2 <= 2.0 || p2 > 0.0));
  }

  TruncationConfig flat{1.0, 1.0};
  CHECK_THROWS_AS(band_penalty(flat, b, 4, 3.0), std::invalid_argument);
  TruncationConfig zero{1.0, 0.0};
  CHECK_THROWS_AS(band_penalty(zero, b, 4, 3.0), std::invalid_argument);
}
