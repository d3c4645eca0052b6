#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "kirchhoff/grid.hpp"

namespace kirchhoff {

// Nonlocal stiffness coefficient M(t) for t = |u|_{H1}^2 >= 0: continuous,
// nondecreasing, bounded below by a positive floor. Either affine a + b t or
// piecewise-linear through tabulated samples (extended with the last slope).
class KirchhoffTerm {
 public:
  static KirchhoffTerm affine(double a, double b);
  static KirchhoffTerm tabulated(std::vector<std::pair<double, double>> samples);

  double value(double t) const;           // throws std::domain_error for t < 0
  double antiderivative(double t) const;  // integral of M from 0 to t
  double floor() const { return floor_; }
  // max of M over [0, t]; equals value(t) because M is nondecreasing.
  double max_on(double t) const { return value(t); }

 private:
  KirchhoffTerm() = default;
  bool affine_ = true;
  double a_ = 1.0, b_ = 0.0;
  std::vector<double> ts_, ms_, cum_;  // knots, values, cumulative integrals
  double floor_ = 1.0;
};

// Right-hand side f(x, t, y): nonnegative, bounded by
// envelope(x,t) * (1 + |y|^gradient_exponent) with the exponent in [0, 2].
struct ReactionSpec {
  std::function<double(const Vec& x, double t, const Vec& y)> eval;
  std::function<double(const Vec& x, double t)> envelope;
  double gradient_exponent = 0.0;
  enum class Tag { app1, app2, custom } tag = Tag::custom;
};

// f = lam*|t|^q + |t|^p + mu*|y|^q with 0 < q < 1 < p.
ReactionSpec make_app1_reaction(double lam, double mu, double q, double p);
// f = A*t^q*(B-t) + |y|^eta on 0 <= t <= B and |y|^eta outside that range.
ReactionSpec make_app2_reaction(double A, double B, double q, double eta);
ReactionSpec make_custom_reaction(std::function<double(const Vec&, double, const Vec&)> eval,
                                  std::function<double(const Vec&, double)> envelope,
                                  double gradient_exponent);

// Samples (x, t, y) with a seeded generator and returns
// {min of envelope*(1+|y|^eta) - f, min of f}; both are >= 0 for a reaction
// that honors its growth contract.
std::pair<double, double> check_envelope(const ReactionSpec& f, int samples, std::uint64_t seed,
                                         double t_range = 4.0, double y_range = 8.0);

struct TruncationConfig {
  double radius = 1.0;            // componentwise gradient clamp bound R > 0
  double penalty_exponent = 0.5;  // band penalty power l in (0,1)
};

// Ordered barrier fields with cached nodal gradients. The lower barrier must
// carry a zero trace; the upper trace must be nonnegative.
struct BarrierPair {
  ScalarField lower, upper;
  VectorField lower_grad, upper_grad;
};

BarrierPair make_barrier_pair(ScalarField lower, ScalarField upper);

// Componentwise clamp of y to [-R, R].
Vec clamp_gradient(const Vec& y, double radius);

// f evaluated at the clamped gradient; identical to f when |y|_inf <= R.
double truncated_reaction(const ReactionSpec& f, const TruncationConfig& trunc, const Vec& x,
                          double t, const Vec& y);

// Truncated reaction with its arguments frozen at the nearest barrier when t
// leaves the band [lower(x), upper(x)] (ties evaluate the in-band branch).
double banded_reaction(const ReactionSpec& f, const TruncationConfig& trunc,
                       const BarrierPair& barriers, std::size_t node, double t, const Vec& y);

// -(lower(x)-t)_+^l + (t-upper(x))_+^l: zero on the band, drives iterates
// back toward it from either side.
double band_penalty(const TruncationConfig& trunc, const BarrierPair& barriers, std::size_t node,
                    double t);

}  // namespace kirchhoff
