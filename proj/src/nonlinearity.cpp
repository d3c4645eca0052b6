#include "kirchhoff/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

KirchhoffTerm KirchhoffTerm::affine(double a, double b) {
  if (!(a > 0.0)) throw std::invalid_argument("KirchhoffTerm::affine: need a > 0");
  if (b < 0.0) throw std::invalid_argument("KirchhoffTerm::affine: need b >= 0");
  KirchhoffTerm M;
  M.affine_ = true;
  M.a_ = a;
  M.b_ = b;
  M.floor_ = a;
  return M;
}

KirchhoffTerm KirchhoffTerm::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("KirchhoffTerm::tabulated: need >= 2 samples");
  if (samples.front().first != 0.0)
    throw std::invalid_argument("KirchhoffTerm::tabulated: first sample must sit at t = 0");
  KirchhoffTerm M;
  M.affine_ = false;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto [t, m] = samples[k];
    if (!(m > 0.0)) throw std::invalid_argument("KirchhoffTerm::tabulated: values must be positive");
    if (k > 0) {
      if (!(t > samples[k - 1].first))
        throw std::invalid_argument("KirchhoffTerm::tabulated: knots must increase");
      if (m < samples[k - 1].second)
        throw std::invalid_argument("KirchhoffTerm::tabulated: values must be nondecreasing");
    }
    M.ts_.push_back(t);
    M.ms_.push_back(m);
  }
  M.floor_ = M.ms_.front();
  M.cum_.assign(M.ts_.size(), 0.0);
  for (std::size_t k = 1; k < M.ts_.size(); ++k)
    M.cum_[k] = M.cum_[k - 1] + 0.5 * (M.ms_[k] + M.ms_[k - 1]) * (M.ts_[k] - M.ts_[k - 1]);
  return M;
}

double KirchhoffTerm::value(double t) const {
  if (t < 0.0) throw std::domain_error("KirchhoffTerm: argument must be >= 0");
  if (affine_) return a_ + b_ * t;
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  if (it == ts_.end()) {
    const std::size_t k = ts_.size() - 1;
    const double slope =
        ts_.size() >= 2 ? (ms_[k] - ms_[k - 1]) / (ts_[k] - ts_[k - 1]) : 0.0;
    return ms_[k] + slope * (t - ts_[k]);
  }
  const std::size_t k = static_cast<std::size_t>(it - ts_.begin());
  if (k == 0) return ms_[0];
  const double w = (t - ts_[k - 1]) / (ts_[k] - ts_[k - 1]);
  return ms_[k - 1] + w * (ms_[k] - ms_[k - 1]);
}

double KirchhoffTerm::antiderivative(double t) const {
  if (t < 0.0) throw std::domain_error("KirchhoffTerm: argument must be >= 0");
  if (affine_) return a_ * t + 0.5 * b_ * t * t;
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  if (it == ts_.end()) {
    const std::size_t k = ts_.size() - 1;
    const double dt = t - ts_[k];
    return cum_[k] + 0.5 * (ms_[k] + value(t)) * dt;
  }
  const std::size_t k = static_cast<std::size_t>(it - ts_.begin());
  if (k == 0) return ms_[0] * t;
  const double dt = t - ts_[k - 1];
  return cum_[k - 1] + 0.5 * (ms_[k - 1] + value(t)) * dt;
}

namespace {

void require_exponent_range(double eta) {
  if (!(eta >= 0.0 && eta <= 2.0))
    throw std::invalid_argument("reaction: gradient exponent must lie in [0, 2]");
}

}  // namespace

ReactionSpec make_app1_reaction(double lam, double mu, double q, double p) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("app1 reaction: need 0 < q < 1");
  if (!(p > 1.0)) throw std::invalid_argument("app1 reaction: need p > 1");
  if (lam < 0.0 || mu < 0.0) throw std::invalid_argument("app1 reaction: need lam, mu >= 0");
  ReactionSpec f;
  f.tag = ReactionSpec::Tag::app1;
  f.gradient_exponent = q;
  f.eval = [lam, mu, q, p](const Vec&, double t, const Vec& y) {
    return lam * std::pow(std::abs(t), q) + std::pow(std::abs(t), p) +
           mu * std::pow(euclid_norm(y), q);
  };
  f.envelope = [lam, mu, q, p](const Vec&, double t) {
    return lam * std::pow(std::abs(t), q) + std::pow(std::abs(t), p) + mu;
  };
  return f;
}

ReactionSpec make_app2_reaction(double A, double B, double q, double eta) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("app2 reaction: need 0 < q < 1");
  if (!(B > 0.0)) throw std::invalid_argument("app2 reaction: need B > 0");
  if (A < 0.0) throw std::invalid_argument("app2 reaction: need A >= 0");
  require_exponent_range(eta);
  ReactionSpec f;
  f.tag = ReactionSpec::Tag::app2;
  f.gradient_exponent = eta;
  f.eval = [A, B, q, eta](const Vec&, double t, const Vec& y) {
    const double grad_part = std::pow(euclid_norm(y), eta);
    if (t <= 0.0 || t >= B) return grad_part;
    return A * std::pow(t, q) * (B - t) + grad_part;
  };
  // The logistic part is bounded by its value at clamp(t, 0, B); adding 1
  // dominates the bare |y|^eta branches, so f <= envelope*(1+|y|^eta).
  f.envelope = [A, B, q](const Vec&, double t) {
    const double tc = std::clamp(t, 0.0, B);
    return A * std::pow(tc, q) * (B - tc) + 1.0;
  };
  return f;
}

ReactionSpec make_custom_reaction(std::function<double(const Vec&, double, const Vec&)> eval,
                                  std::function<double(const Vec&, double)> envelope,
                                  double gradient_exponent) {
  require_exponent_range(gradient_exponent);
  ReactionSpec f;
  f.tag = ReactionSpec::Tag::custom;
  f.gradient_exponent = gradient_exponent;
  f.eval = std::move(eval);
  f.envelope = std::move(envelope);
  return f;
}

std::pair<double, double> check_envelope(const ReactionSpec& f, int samples, std::uint64_t seed,
                                         double t_range, double y_range) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double min_slack = 0.0;
  double min_value = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec x{unit(), unit()};
    const double t = (2.0 * unit() - 1.0) * t_range;
    const Vec y{(2.0 * unit() - 1.0) * y_range, (2.0 * unit() - 1.0) * y_range};
    const double val = f.eval(x, t, y);
    const double bound =
        f.envelope(x, t) * (1.0 + std::pow(euclid_norm(y), f.gradient_exponent));
    min_slack = k == 0 ? bound - val : std::min(min_slack, bound - val);
    min_value = k == 0 ? val : std::min(min_value, val);
  }
  return {min_slack, min_value};
}

BarrierPair make_barrier_pair(ScalarField lower, ScalarField upper) {
  if (!(lower.grid == upper.grid)) throw DomainError("make_barrier_pair: grid mismatch");
  for (double t : lower.trace.face)
    if (t != 0.0) throw std::invalid_argument("make_barrier_pair: lower barrier needs zero trace");
  for (int a = 0; a < 2 * upper.grid.dim; ++a)
    if (upper.trace.face[a] < 0.0)
      throw std::invalid_argument("make_barrier_pair: upper trace must be nonnegative");
  for (std::size_t k = 0; k < lower.values.size(); ++k)
    if (!(lower.values[k] <= upper.values[k]))
      throw std::invalid_argument("make_barrier_pair: barriers are not ordered");
  BarrierPair b;
  b.lower_grad = node_gradient(lower);
  b.upper_grad = node_gradient(upper);
  b.lower = std::move(lower);
  b.upper = std::move(upper);
  return b;
}

Vec clamp_gradient(const Vec& y, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("clamp_gradient: radius must be positive");
  return {std::clamp(y[0], -radius, radius), std::clamp(y[1], -radius, radius)};
}

double truncated_reaction(const ReactionSpec& f, const TruncationConfig& trunc, const Vec& x,
                          double t, const Vec& y) {
  return f.eval(x, t, clamp_gradient(y, trunc.radius));
}

double banded_reaction(const ReactionSpec& f, const TruncationConfig& trunc,
                       const BarrierPair& barriers, std::size_t node, double t, const Vec& y) {
  const Vec x = barriers.lower.grid.coord(node);
  const double lo = barriers.lower.values[node];
  const double up = barriers.upper.values[node];
  if (t < lo) return truncated_reaction(f, trunc, x, lo, barriers.lower_grad.values[node]);
  if (t > up) return truncated_reaction(f, trunc, x, up, barriers.upper_grad.values[node]);
  return truncated_reaction(f, trunc, x, t, y);
}

double band_penalty(const TruncationConfig& trunc, const BarrierPair& barriers, std::size_t node,
                    double t) {
  const double l = trunc.penalty_exponent;
  if (!(l > 0.0 && l < 1.0))
    throw std::invalid_argument("band_penalty: exponent must lie in (0, 1)");
  const double below = barriers.lower.values[node] - t;
  const double above = t - barriers.upper.values[node];
  double out = 0.0;
  if (below > 0.0) out -= std::pow(below, l);
  if (above > 0.0) out += std::pow(above, l);
  return out;
}

}  // namespace kirchhoff
