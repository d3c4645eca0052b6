#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace kirchhoff {

// Spatial vectors are at most 2D; in 1D the second component stays 0.
using Vec = std::array<double, 2>;

double euclid_norm(const Vec& v);

// Constant Dirichlet data per face. Face order: x_lo, x_hi, y_lo, y_hi
// (the y faces are ignored in 1D).
struct BoundaryTrace {
  std::array<double, 4> face{0.0, 0.0, 0.0, 0.0};

  static BoundaryTrace zero() { return {}; }
  static BoundaryTrace uniform(double c) { return BoundaryTrace{{c, c, c, c}}; }
  bool operator==(const BoundaryTrace&) const = default;
};

// Uniform tensor grid of interior nodes on an interval or a rectangle with
// homogeneous node spacing h = extent/(n+1) per axis. Immutable after build.
struct Grid {
  int dim = 1;
  std::array<double, 2> extent{1.0, 0.0};
  std::array<int, 2> n{0, 0};
  std::array<double, 2> h{0.0, 0.0};

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * (dim == 2 ? static_cast<std::size_t>(n[1]) : 1u);
  }
  // Interior nodes are numbered with x fastest: node = j*n[0] + i.
  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n[0]) + static_cast<std::size_t>(i);
  }
  Vec coord(std::size_t node) const;
  double cell_volume() const { return h[0] * (dim == 2 ? h[1] : 1.0); }
  double domain_volume() const { return extent[0] * (dim == 2 ? extent[1] : 1.0); }
  bool operator==(const Grid&) const = default;
};

// dim in {1,2}; every extent > 0; every n >= 3. Violations throw DomainError.
Grid build_grid(int dim, const std::vector<double>& extents, const std::vector<int>& counts);

// Nodal values at interior nodes plus constant-per-face boundary data.
struct ScalarField {
  Grid grid;
  std::vector<double> values;
  BoundaryTrace trace;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0, BoundaryTrace tr = BoundaryTrace::zero())
      : grid(g), values(g.size(), fill), trace(tr) {}
};

struct VectorField {
  Grid grid;
  std::vector<Vec> values;

  VectorField() = default;
  explicit VectorField(const Grid& g) : grid(g), values(g.size(), Vec{0.0, 0.0}) {}
};

struct FieldNorms {
  double sup_norm = 0.0;
  double grad_sup_norm = 0.0;
  double h1_seminorm_sq = 0.0;
  double l1_norm = 0.0;
};

// Second-order 3/5-point stencil for -Laplace(u); nodes next to the boundary
// read the face trace as the ghost value. The result carries a zero trace.
ScalarField apply_neg_laplacian(const ScalarField& u);

// Second-order nodal gradient: central differences between interior nodes and
// across the boundary point (trace value) for boundary-adjacent nodes.
VectorField node_gradient(const ScalarField& u);

// sup|u| and sup|grad u| over interior nodes; integral quantities use the
// closed trapezoid rule: interior nodal sums plus half-weighted boundary
// samples, so constant-trace fields and quadratic profiles integrate to
// second order. Boundary gradient samples come from one-sided second-order
// formulas anchored at the face trace; under constant per-face traces the
// corner gradient vanishes.
FieldNorms field_norms(const ScalarField& u);

// Bilinear Dirichlet form: integral of grad(u).grad(v) with the same closed
// trapezoid quadrature (so dirichlet_form(u,u) == h1_seminorm_sq).
double dirichlet_form(const ScalarField& u, const ScalarField& v);

// Plain nodal sum times cell volume of u*v (both zero on the boundary in
// every use site, where this equals the trapezoid rule).
double integrate_product(const ScalarField& u, const ScalarField& v);

// "x,u" / "x,y,u" with 17 significant digits, interior nodes only, x fastest.
void write_field_csv(const ScalarField& u, const std::string& path);
// Reads a CSV produced by write_field_csv and validates node coordinates
// against the grid. The trace is supplied by the caller (it is not stored).
ScalarField read_field_csv(const Grid& grid, const std::string& path,
                           BoundaryTrace trace = BoundaryTrace::zero());

ScalarField scaled(const ScalarField& u, double factor);

}  // namespace kirchhoff
