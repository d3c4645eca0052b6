#include "kirchhoff/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

double euclid_norm(const Vec& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1]); }

Vec Grid::coord(std::size_t node) const {
  if (dim == 1) return {(static_cast<double>(node) + 1.0) * h[0], 0.0};
  const std::size_t nx = static_cast<std::size_t>(n[0]);
  const std::size_t i = node % nx;
  const std::size_t j = node / nx;
  return {(static_cast<double>(i) + 1.0) * h[0], (static_cast<double>(j) + 1.0) * h[1]};
}

Grid build_grid(int dim, const std::vector<double>& extents, const std::vector<int>& counts) {
  if (dim != 1 && dim != 2) throw DomainError("build_grid: dim must be 1 or 2");
  if (extents.size() != static_cast<std::size_t>(dim) ||
      counts.size() != static_cast<std::size_t>(dim))
    throw DomainError("build_grid: extents/counts must have one entry per axis");
  Grid g;
  g.dim = dim;
  g.extent = {0.0, 0.0};
  g.n = {0, 0};
  g.h = {0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    if (!(extents[a] > 0.0) || !std::isfinite(extents[a]))
      throw DomainError("build_grid: extent must be positive and finite");
    if (counts[a] < 3) throw DomainError("build_grid: need at least 3 interior nodes per axis");
    g.extent[a] = extents[a];
    g.n[a] = counts[a];
    g.h[a] = extents[a] / (counts[a] + 1);
  }
  return g;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw DomainError(std::string(where) + ": grid mismatch");
}

}  // namespace

ScalarField apply_neg_laplacian(const ScalarField& u) {
  const Grid& g = u.grid;
  ScalarField out(g);
  const auto& v = u.values;
  if (g.dim == 1) {
    const int n = g.n[0];
    const double ih2 = 1.0 / (g.h[0] * g.h[0]);
    for (int i = 0; i < n; ++i) {
      const double left = i > 0 ? v[g.index(i - 1)] : u.trace.face[0];
      const double right = i < n - 1 ? v[g.index(i + 1)] : u.trace.face[1];
      out.values[g.index(i)] = (2.0 * v[g.index(i)] - left - right) * ih2;
    }
    return out;
  }
  const int nx = g.n[0], ny = g.n[1];
  const double ihx2 = 1.0 / (g.h[0] * g.h[0]);
  const double ihy2 = 1.0 / (g.h[1] * g.h[1]);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double c = v[g.index(i, j)];
      const double xl = i > 0 ? v[g.index(i - 1, j)] : u.trace.face[0];
      const double xr = i < nx - 1 ? v[g.index(i + 1, j)] : u.trace.face[1];
      const double yl = j > 0 ? v[g.index(i, j - 1)] : u.trace.face[2];
      const double yr = j < ny - 1 ? v[g.index(i, j + 1)] : u.trace.face[3];
      out.values[g.index(i, j)] = (2.0 * c - xl - xr) * ihx2 + (2.0 * c - yl - yr) * ihy2;
    }
  }
  return out;
}

VectorField node_gradient(const ScalarField& u) {
  const Grid& g = u.grid;
  VectorField out(g);
  const auto& v = u.values;
  if (g.dim == 1) {
    const int n = g.n[0];
    const double i2h = 1.0 / (2.0 * g.h[0]);
    for (int i = 0; i < n; ++i) {
      const double left = i > 0 ? v[g.index(i - 1)] : u.trace.face[0];
      const double right = i < n - 1 ? v[g.index(i + 1)] : u.trace.face[1];
      out.values[g.index(i)] = {(right - left) * i2h, 0.0};
    }
    return out;
  }
  const int nx = g.n[0], ny = g.n[1];
  const double i2hx = 1.0 / (2.0 * g.h[0]);
  const double i2hy = 1.0 / (2.0 * g.h[1]);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double xl = i > 0 ? v[g.index(i - 1, j)] : u.trace.face[0];
      const double xr = i < nx - 1 ? v[g.index(i + 1, j)] : u.trace.face[1];
      const double yl = j > 0 ? v[g.index(i, j - 1)] : u.trace.face[2];
      const double yr = j < ny - 1 ? v[g.index(i, j + 1)] : u.trace.face[3];
      out.values[g.index(i, j)] = {(xr - xl) * i2hx, (yr - yl) * i2hy};
    }
  }
  return out;
}

namespace {

// One-sided second-order derivative at a face point: values u1, u2 sit one
// and two spacings inside from the face value t.
double one_sided(double t, double u1, double u2, double h) {
  return (-3.0 * t + 4.0 * u1 - u2) / (2.0 * h);
}

// Visits every closed-trapezoid gradient sample of u and v with its quadrature
// weight (relative to cell volume). Corner samples vanish for constant
// per-face traces and are skipped.
template <typename Fn>
void for_each_gradient_sample(const ScalarField& u, const ScalarField& v, Fn&& fn) {
  const Grid& g = u.grid;
  const VectorField gu = node_gradient(u);
  const VectorField gv = node_gradient(v);
  for (std::size_t k = 0; k < g.size(); ++k) fn(1.0, gu.values[k], gv.values[k]);

  if (g.dim == 1) {
    const int n = g.n[0];
    const double h = g.h[0];
    auto edge = [&](const ScalarField& f, bool lo) -> Vec {
      if (lo) return {one_sided(f.trace.face[0], f.values[0], f.values[1], h), 0.0};
      return {-one_sided(f.trace.face[1], f.values[g.index(n - 1)], f.values[g.index(n - 2)], h),
              0.0};
    };
    fn(0.5, edge(u, true), edge(v, true));
    fn(0.5, edge(u, false), edge(v, false));
    return;
  }

  const int nx = g.n[0], ny = g.n[1];
  auto face_x = [&](const ScalarField& f, bool lo, int j) -> Vec {
    if (lo) return {one_sided(f.trace.face[0], f.values[f.grid.index(0, j)],
                              f.values[f.grid.index(1, j)], g.h[0]),
                    0.0};
    return {-one_sided(f.trace.face[1], f.values[f.grid.index(nx - 1, j)],
                       f.values[f.grid.index(nx - 2, j)], g.h[0]),
            0.0};
  };
  auto face_y = [&](const ScalarField& f, bool lo, int i) -> Vec {
    if (lo) return {0.0, one_sided(f.trace.face[2], f.values[f.grid.index(i, 0)],
                                   f.values[f.grid.index(i, 1)], g.h[1])};
    return {0.0, -one_sided(f.trace.face[3], f.values[f.grid.index(i, ny - 1)],
                            f.values[f.grid.index(i, ny - 2)], g.h[1])};
  };
  for (int j = 0; j < ny; ++j) {
    fn(0.5, face_x(u, true, j), face_x(v, true, j));
    fn(0.5, face_x(u, false, j), face_x(v, false, j));
  }
  for (int i = 0; i < nx; ++i) {
    fn(0.5, face_y(u, true, i), face_y(v, true, i));
    fn(0.5, face_y(u, false, i), face_y(v, false, i));
  }
}

}  // namespace

double dirichlet_form(const ScalarField& u, const ScalarField& v) {
  require_same_grid(u.grid, v.grid, "dirichlet_form");
  double acc = 0.0;
  for_each_gradient_sample(u, v, [&](double w, const Vec& a, const Vec& b) {
    acc += w * (a[0] * b[0] + a[1] * b[1]);
  });
  return acc * u.grid.cell_volume();
}

double integrate_product(const ScalarField& u, const ScalarField& v) {
  require_same_grid(u.grid, v.grid, "integrate_product");
  double acc = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) acc += u.values[k] * v.values[k];
  return acc * u.grid.cell_volume();
}

FieldNorms field_norms(const ScalarField& u) {
  const Grid& g = u.grid;
  FieldNorms out;
  for (double x : u.values) out.sup_norm = std::max(out.sup_norm, std::abs(x));

  const VectorField grad = node_gradient(u);
  for (const Vec& y : grad.values) out.grad_sup_norm = std::max(out.grad_sup_norm, euclid_norm(y));

  out.h1_seminorm_sq = dirichlet_form(u, u);

  double l1 = 0.0;
  for (double x : u.values) l1 += std::abs(x);
  if (g.dim == 1) {
    l1 += 0.5 * (std::abs(u.trace.face[0]) + std::abs(u.trace.face[1]));
  } else {
    for (int j = 0; j < g.n[1]; ++j)
      l1 += 0.5 * (std::abs(u.trace.face[0]) + std::abs(u.trace.face[1]));
    for (int i = 0; i < g.n[0]; ++i)
      l1 += 0.5 * (std::abs(u.trace.face[2]) + std::abs(u.trace.face[3]));
    l1 += 0.25 * (std::abs(0.5 * (u.trace.face[0] + u.trace.face[2])) +
                  std::abs(0.5 * (u.trace.face[1] + u.trace.face[2])) +
                  std::abs(0.5 * (u.trace.face[0] + u.trace.face[3])) +
                  std::abs(0.5 * (u.trace.face[1] + u.trace.face[3])));
  }
  out.l1_norm = l1 * g.cell_volume();
  return out;
}

ScalarField scaled(const ScalarField& u, double factor) {
  ScalarField out = u;
  for (double& x : out.values) x *= factor;
  for (double& t : out.trace.face) t *= factor;
  return out;
}

namespace {

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void write_field_csv(const ScalarField& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SolveError("write_field_csv: cannot open " + path);
  const Grid& g = u.grid;
  if (g.dim == 1) {
    out << "x,u\n";
    for (int i = 0; i < g.n[0]; ++i) {
      const std::size_t k = g.index(i);
      out << format_g17(g.coord(k)[0]) << ',' << format_g17(u.values[k]) << '\n';
    }
  } else {
    out << "x,y,u\n";
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        const std::size_t k = g.index(i, j);
        const Vec p = g.coord(k);
        out << format_g17(p[0]) << ',' << format_g17(p[1]) << ',' << format_g17(u.values[k])
            << '\n';
      }
    }
  }
  if (!out) throw SolveError("write_field_csv: write failed for " + path);
}

ScalarField read_field_csv(const Grid& grid, const std::string& path, BoundaryTrace trace) {
  std::ifstream in(path);
  if (!in) throw SolveError("read_field_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw SolveError("read_field_csv: empty file " + path);
  const std::string want_header = grid.dim == 1 ? "x,u" : "x,y,u";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want_header)
    throw SolveError("read_field_csv: expected header '" + want_header + "' in " + path);

  ScalarField u(grid, 0.0, trace);
  const double coord_tol = 1e-9 * std::max(grid.extent[0], grid.extent[1]);
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (k >= grid.size()) throw SolveError("read_field_csv: too many rows in " + path);
    std::istringstream ss(line);
    double x = 0.0, y = 0.0, val = 0.0;
    char comma = 0;
    if (grid.dim == 1) {
      if (!(ss >> x >> comma >> val) || comma != ',')
        throw SolveError("read_field_csv: malformed row in " + path);
    } else {
      char comma2 = 0;
      if (!(ss >> x >> comma >> y >> comma2 >> val) || comma != ',' || comma2 != ',')
        throw SolveError("read_field_csv: malformed row in " + path);
    }
    const Vec want = grid.coord(k);
    if (std::abs(x - want[0]) > coord_tol || (grid.dim == 2 && std::abs(y - want[1]) > coord_tol))
      throw SolveError("read_field_csv: node coordinates do not match the grid in " + path);
    if (!std::isfinite(val)) throw SolveError("read_field_csv: non-finite value in " + path);
    u.values[k++] = val;
  }
  if (k != grid.size()) throw SolveError("read_field_csv: row count does not match grid in " + path);
  return u;
}

}  // namespace kirchhoff
