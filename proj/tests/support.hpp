#pragma once

// Self-contained numeric oracles for the test suites. Everything here is
// deliberately independent of the library's own algorithms, so agreement
// between the two is evidence rather than tautology.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace oracle {

// Plain bisection for a continuous function with a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::runtime_error("bisect: no sign change on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm * flo > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimizer for a unimodal function on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-12) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
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
  return 0.5 * (a + b);
}

// Center value of -Lap u = 1 on the unit square from the classical double
// sine series u(x,y) = (16/pi^4) sum_{m,n odd} sin(m pi x) sin(n pi y) /
// (m n (m^2+n^2)). At the center the sines are exactly +-1, taken here from
// the index instead of from std::sin so large indices stay exact.
inline double poisson_square_center(int max_index = 499) {
  double acc = 0.0;
  for (int m = 1; m <= max_index; m += 2) {
    const double sm = (m % 4 == 1) ? 1.0 : -1.0;
    for (int n = 1; n <= max_index; n += 2) {
      const double sn = (n % 4 == 1) ? 1.0 : -1.0;
      acc += sm * sn /
             (static_cast<double>(m) * static_cast<double>(n) *
              (static_cast<double>(m) * m + static_cast<double>(n) * n));
    }
  }
  const double pi = 3.14159265358979323846;
  return 16.0 / (pi * pi * pi * pi) * acc;
}

// Discrete principal eigenvalue of the 1D three-point -Laplacian on (0, L)
// with n interior nodes: (4/h^2) sin^2(pi h / (2 L)).
inline double discrete_lambda1_1d(int n, double extent = 1.0) {
  const double pi = 3.14159265358979323846;
  const double h = extent / (n + 1);
  const double s = std::sin(0.5 * pi * h / extent);
  return 4.0 / (h * h) * s * s;
}

// Deterministic uniform doubles in [lo, hi] for property sampling.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo = 0.0, double hi = 1.0) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
