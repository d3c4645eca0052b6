// Python bindings for the laboratory core. Operations return plain dicts
// (converted from the same JSON reports the CLI emits) so results are easy
// to poke at from a notebook.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kirchhoff/applications.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/json_report.hpp"

namespace py = pybind11;
using namespace kirchhoff;

namespace {

py::object json_to_py(const ordered_json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null:
      return py::none();
    case nlohmann::json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float:
      return py::float_(j.get<double>());
    case nlohmann::json::value_t::string:
      return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      throw std::runtime_error("unsupported JSON value in conversion");
  }
}

Grid grid_for(const std::string& domain, int n, double extent) {
  if (domain == "interval") return build_grid(1, {extent}, {n});
  if (domain == "square") return build_grid(2, {extent, extent}, {n, n});
  throw DomainError("domain must be 'interval' or 'square'");
}

py::dict field_to_py(const ScalarField& u) {
  const FieldNorms norms = field_norms(u);
  py::dict out;
  out["values"] = u.values;
  out["sup"] = norms.sup_norm;
  out["grad_sup"] = norms.grad_sup_norm;
  out["h1_seminorm_sq"] = norms.h1_seminorm_sq;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical laboratory for a nonlocal quasilinear Dirichlet problem";

  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<OrderingError>(m, "OrderingError");
  py::register_exception<GradientBoundError>(m, "GradientBoundError");
  py::register_exception<NoConvergenceError>(m, "NoConvergenceError");

  m.def(
      "poisson",
      [](const std::string& domain, int n, double extent) {
        return field_to_py(solve_poisson_unit(grid_for(domain, n, extent)));
      },
      py::arg("domain") = "interval", py::arg("n") = 99, py::arg("extent") = 1.0,
      "solve -Lap(e) = 1 with zero boundary data; returns values and norms");

  m.def(
      "eigenpair",
      [](const std::string& domain, int n, double extent) {
        const EigenPair eig = principal_eigenpair(grid_for(domain, n, extent));
        py::dict out;
        out["lambda1"] = eig.lambda1;
        out["residual_sup"] = eig.residual_sup;
        out["iterations"] = eig.iterations;
        out["phi1"] = field_to_py(eig.phi1);
        return out;
      },
      py::arg("domain") = "interval", py::arg("n") = 99, py::arg("extent") = 1.0,
      "principal Dirichlet eigenpair of -Lap (sup-normalized, positive)");

  m.def(
      "app1",
      [](double lam, double mu, double q, double p, double a, double b, const std::string& domain,
         int n, double extent) {
        App1Params params;
        params.lam = lam;
        params.mu = mu;
        params.q = q;
        params.p = p;
        params.M = KirchhoffTerm::affine(a, b);
        const Grid grid = grid_for(domain, n, extent);
        const ApplicationReport rep = run_application(grid, params, SolverConfig{});
        py::dict out;
        out["report"] = json_to_py(solve_report_json(rep.solve));
        out["application"] = json_to_py(application_details_json(rep));
        out["u"] = field_to_py(rep.solve.u);
        return out;
      },
      py::arg("lam") = 0.1, py::arg("mu") = 0.1, py::arg("q") = 0.5, py::arg("p") = 2.0,
      py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("domain") = "interval", py::arg("n") = 99,
      py::arg("extent") = 1.0,
      "solve with the concave-convex reaction lam*t^q + mu*|y|^q + t^p");

  m.def(
      "app2",
      [](double A, double B, double q, double eta, double a, double b, const std::string& domain,
         int n, double extent) {
        App2Params params;
        params.A = A;
        params.B = B;
        params.q = q;
        params.eta = eta;
        params.M = KirchhoffTerm::affine(a, b);
        const Grid grid = grid_for(domain, n, extent);
        const ApplicationReport rep = run_application(grid, params, SolverConfig{});
        py::dict out;
        out["report"] = json_to_py(solve_report_json(rep.solve));
        out["application"] = json_to_py(application_details_json(rep));
        out["u"] = field_to_py(rep.solve.u);
        return out;
      },
      py::arg("A") = 10.0, py::arg("B") = 1.0, py::arg("q") = 0.5, py::arg("eta") = 2.0,
      py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("domain") = "interval", py::arg("n") = 99,
      py::arg("extent") = 1.0,
      "solve with the logistic-type reaction A*t^q*(B - t)*(1 + |y|^eta)");

  m.def(
      "probe",
      [](int trials, std::uint64_t seed, double a, double b, int n) {
        const Grid grid = build_grid(1, {1.0}, {n});
        const OperatorProbeReport rep =
            probe_operator_properties(grid, KirchhoffTerm::affine(a, b), trials, seed);
        return json_to_py(probe_report_json(rep));
      },
      py::arg("trials") = 100, py::arg("seed") = 1, py::arg("a") = 1.0, py::arg("b") = 1.0,
      py::arg("n") = 63,
      "finite monotonicity/convexity/coercivity probes of the stiffness pairing");
}
