// Command-line laboratory for the nonlocal quasilinear Dirichlet problem
//   -M(|u|_{H1}^2) Lap(u) = f(x, u, grad u),  u = 0 on the boundary,
// solved between an ordered barrier pair. Subcommands cover the building
// blocks (poisson, eigen, probe, verify) and the full drivers (app1, app2,
// solve). Every JSON report echoes the resolved configuration and serializes
// numbers with 17 significant digits, so identical invocations emit identical
// bytes. Exit codes: 0 accepted/pass, 2 infeasible or failed checks, 1 errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kirchhoff/applications.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/json_report.hpp"

namespace {

using namespace kirchhoff;

struct DomainArgs {
  std::string domain = "interval";
  int n = 99;
  double extent = 1.0;
};

Grid make_domain(const DomainArgs& d) {
  if (d.domain == "interval") return build_grid(1, {d.extent}, {d.n});
  if (d.domain == "square") return build_grid(2, {d.extent, d.extent}, {d.n, d.n});
  throw DomainError("domain must be 'interval' or 'square'");
}

ordered_json domain_echo(const DomainArgs& d) {
  ordered_json j;
  j["domain"] = d.domain;
  j["n"] = d.n;
  j["extent"] = d.extent;
  return j;
}

void emit(const ordered_json& j) { std::cout << dump_report(j); }

void write_report_file(const ordered_json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SolveError("cannot open report file " + path.string());
  out << dump_report(j);
}

int run_poisson(const DomainArgs& dom, const std::string& out_path) {
  const Grid grid = make_domain(dom);
  const ScalarField e = solve_poisson_unit(grid);
  write_field_csv(e, out_path);
  const FieldNorms norms = field_norms(e);
  ordered_json j;
  j["command"] = "poisson";
  j["config"] = domain_echo(dom);
  j["config"]["out"] = out_path;
  j["sup"] = norms.sup_norm;
  j["grad_sup"] = norms.grad_sup_norm;
  j["h1_seminorm_sq"] = norms.h1_seminorm_sq;
  emit(j);
  return 0;
}

int run_eigen(const DomainArgs& dom, const std::string& out_path) {
  const Grid grid = make_domain(dom);
  const EigenPair eig = principal_eigenpair(grid);
  write_field_csv(eig.phi1, out_path);
  ordered_json j;
  j["command"] = "eigen";
  j["config"] = domain_echo(dom);
  j["config"]["out"] = out_path;
  j["lambda1"] = eig.lambda1;
  j["residual_sup"] = eig.residual_sup;
  j["iterations"] = eig.iterations;
  emit(j);
  return 0;
}

int run_probe(int trials, std::uint64_t seed, double a, double b, int n) {
  const Grid grid = build_grid(1, {1.0}, {n});
  const KirchhoffTerm M = KirchhoffTerm::affine(a, b);
  const OperatorProbeReport rep = probe_operator_properties(grid, M, trials, seed);
  ordered_json j;
  j["command"] = "probe";
  ordered_json cfg;
  cfg["trials"] = trials;
  cfg["seed"] = seed;
  cfg["a"] = a;
  cfg["b"] = b;
  cfg["n"] = n;
  j["config"] = cfg;
  j["report"] = probe_report_json(rep);
  emit(j);
  return rep.pass ? 0 : 2;
}

// Shared reporting for the application drivers: field CSVs into out_dir plus
// the report envelope on stdout and in out_dir/report.json.
int finish_application(ordered_json j, const AppParams& params,
                       const Grid& grid, const SolverConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  try {
    const ApplicationReport rep = run_application(grid, params, cfg);
    const std::filesystem::path dir(out_dir);
    write_field_csv(rep.solve.u, (dir / "u.csv").string());
    write_field_csv(rep.barriers.lower, (dir / "lower.csv").string());
    write_field_csv(rep.barriers.upper, (dir / "upper.csv").string());
    j["report"] = solve_report_json(rep.solve);
    j["application"] = application_details_json(rep);
    write_report_file(j, dir / "report.json");
    emit(j);
    return rep.solve.accepted && rep.checks_pass ? 0 : 2;
  } catch (const InfeasibleError& e) {
    j["accepted"] = false;
    j["reason"] = e.what();
    write_report_file(j, std::filesystem::path(out_dir) / "report.json");
    emit(j);
    return 2;
  } catch (const OrderingError& e) {
    j["accepted"] = false;
    j["reason"] = e.what();
    j["worst_node"] = static_cast<std::uint64_t>(e.worst_node);
    j["worst_margin"] = e.worst_margin;
    emit(j);
    return 2;
  } catch (const GradientBoundError& e) {
    j["accepted"] = false;
    j["reason"] = e.what();
    j["grad_sup"] = e.grad_sup;
    j["R_last"] = e.radius;
    emit(j);
    return 2;
  }
}

// --- config-file driven subcommands ---------------------------------------

double get_or(const nlohmann::json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

int geti_or(const nlohmann::json& j, const std::string& key, int fallback) {
  return j.contains(key) ? j.at(key).get<int>() : fallback;
}

SolverConfig solver_from_json(const nlohmann::json& j) {
  SolverConfig cfg;
  cfg.lin_tol = get_or(j, "lin_tol", cfg.lin_tol);
  cfg.picard_tol = get_or(j, "picard_tol", cfg.picard_tol);
  cfg.picard_damping = get_or(j, "picard_damping", cfg.picard_damping);
  cfg.outer_tol = get_or(j, "outer_tol", cfg.outer_tol);
  cfg.max_inner = geti_or(j, "max_inner", cfg.max_inner);
  cfg.max_outer = geti_or(j, "max_outer", cfg.max_outer);
  cfg.max_linear = geti_or(j, "max_linear", cfg.max_linear);
  cfg.R_initial = get_or(j, "R_initial", cfg.R_initial);
  cfg.R_growth = get_or(j, "R_growth", cfg.R_growth);
  cfg.R_max_doublings = geti_or(j, "R_max_doublings", cfg.R_max_doublings);
  cfg.penalty_exponent = get_or(j, "l", cfg.penalty_exponent);
  cfg.order_tol = get_or(j, "order_tol", cfg.order_tol);
  return cfg;
}

Grid grid_from_json(const nlohmann::json& j) {
  const std::string domain = j.value("domain", std::string("interval"));
  const int dim = domain == "square" ? 2 : (domain == "interval" ? 1 : 0);
  if (dim == 0) throw DomainError("config: domain must be 'interval' or 'square'");
  std::vector<double> extents;
  std::vector<int> counts;
  if (j.contains("extent") && j.at("extent").is_array())
    extents = j.at("extent").get<std::vector<double>>();
  else
    extents.assign(static_cast<std::size_t>(dim), get_or(j, "extent", 1.0));
  if (j.contains("n") && j.at("n").is_array())
    counts = j.at("n").get<std::vector<int>>();
  else
    counts.assign(static_cast<std::size_t>(dim), geti_or(j, "n", 99));
  return build_grid(dim, extents, counts);
}

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolveError("cannot open config file " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

ordered_json echo_json(const nlohmann::json& j) {
  // Re-key the parsed config in sorted order so the echo is deterministic
  // regardless of the file's own key order.
  ordered_json out;
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  for (const std::string& k : keys) {
    const nlohmann::json& v = j.at(k);
    if (v.is_object())
      out[k] = echo_json(v);
    else
      out[k] = ordered_json(v);
  }
  return out;
}

AppParams params_from_json(const nlohmann::json& j) {
  const std::string reaction = j.value("reaction", std::string());
  const KirchhoffTerm M = KirchhoffTerm::affine(get_or(j, "a", 1.0), get_or(j, "b", 0.0));
  if (reaction == "app1") {
    App1Params p;
    p.lam = get_or(j, "lambda", p.lam);
    p.mu = get_or(j, "mu", p.mu);
    p.q = get_or(j, "q", p.q);
    p.p = get_or(j, "p", p.p);
    p.M = M;
    return p;
  }
  if (reaction == "app2") {
    App2Params p;
    p.A = get_or(j, "A", p.A);
    p.B = get_or(j, "B", p.B);
    p.q = get_or(j, "q", p.q);
    p.eta = get_or(j, "eta", p.eta);
    p.M = M;
    return p;
  }
  throw SolveError("config: reaction must be 'app1' or 'app2'");
}

ReactionSpec reaction_from_params(const AppParams& params) {
  if (const App1Params* p1 = std::get_if<App1Params>(&params))
    return make_app1_reaction(p1->lam, p1->mu, p1->q, p1->p);
  const App2Params& p2 = std::get<App2Params>(params);
  return make_app2_reaction(p2.A, p2.B, p2.q, p2.eta);
}

int run_solve(const std::string& config_path) {
  const nlohmann::json cfg_json = load_config(config_path);
  const Grid grid = grid_from_json(cfg_json);
  const SolverConfig cfg = solver_from_json(cfg_json);
  const AppParams params = params_from_json(cfg_json);
  const std::string out_dir = cfg_json.value("out", std::string("."));
  ordered_json j;
  j["command"] = "solve";
  j["config"] = echo_json(cfg_json);

  // Explicit barrier fields put the generic solver in charge; without them the
  // barriers come from the application's own construction.
  if (!cfg_json.contains("lower") || !cfg_json.contains("upper"))
    return finish_application(std::move(j), params, grid, cfg, out_dir);

  const ScalarField lower = read_field_csv(grid, cfg_json.at("lower").get<std::string>());
  const ScalarField upper =
      read_field_csv(grid, cfg_json.at("upper").get<std::string>(),
                     BoundaryTrace::uniform(get_or(cfg_json, "upper_trace", 0.0)));
  const KirchhoffTerm M = KirchhoffTerm::affine(get_or(cfg_json, "a", 1.0),
                                                get_or(cfg_json, "b", 0.0));
  std::filesystem::create_directories(out_dir);
  try {
    const SolveReport rep = solve_quasilinear(grid, M, reaction_from_params(params), cfg,
                                              make_barrier_pair(lower, upper));
    write_field_csv(rep.u, (std::filesystem::path(out_dir) / "u.csv").string());
    j["report"] = solve_report_json(rep);
    write_report_file(j, std::filesystem::path(out_dir) / "report.json");
    emit(j);
    return rep.accepted ? 0 : 2;
  } catch (const OrderingError& e) {
    j["accepted"] = false;
    j["reason"] = e.what();
    j["worst_node"] = static_cast<std::uint64_t>(e.worst_node);
    j["worst_margin"] = e.worst_margin;
    emit(j);
    return 2;
  } catch (const GradientBoundError& e) {
    j["accepted"] = false;
    j["reason"] = e.what();
    j["grad_sup"] = e.grad_sup;
    j["R_last"] = e.radius;
    emit(j);
    return 2;
  }
}

int run_verify(const std::string& config_path) {
  const nlohmann::json cfg_json = load_config(config_path);
  const Grid grid = grid_from_json(cfg_json);
  ordered_json j;
  j["command"] = "verify";
  j["config"] = echo_json(cfg_json);
  const double tol = get_or(cfg_json, "tol", 1e-6);

  std::optional<ScalarField> upper, lower;
  if (cfg_json.contains("upper")) {
    const double trace = get_or(cfg_json, "upper_trace", 0.0);
    upper = read_field_csv(grid, cfg_json.at("upper").get<std::string>(),
                           BoundaryTrace::uniform(trace));
  }
  if (cfg_json.contains("lower"))
    lower = read_field_csv(grid, cfg_json.at("lower").get<std::string>());

  std::optional<ReactionSpec> f;
  if (cfg_json.contains("reaction")) {
    const AppParams params = params_from_json(cfg_json);
    if (const App1Params* p1 = std::get_if<App1Params>(&params))
      f = make_app1_reaction(p1->lam, p1->mu, p1->q, p1->p);
    else {
      const App2Params& p2 = std::get<App2Params>(params);
      f = make_app2_reaction(p2.A, p2.B, p2.q, p2.eta);
    }
  }

  bool all_pass = true;
  bool any_check = false;
  ordered_json checks;
  if (upper && f) {
    const double m = get_or(cfg_json, "m", 1.0);
    const InequalityReport rep = verify_supersolution(*upper, *f, m, tol);
    checks["supersolution"] = inequality_report_json(rep, grid);
    all_pass = all_pass && rep.pass;
    any_check = true;
  }
  if (lower && f) {
    const double alpha = get_or(cfg_json, "alpha", 1.0);
    const InequalityReport rep = verify_subsolution(*lower, *f, alpha, tol);
    checks["subsolution"] = inequality_report_json(rep, grid);
    all_pass = all_pass && rep.pass;
    any_check = true;
  }
  if (upper && lower) {
    const OrderReport rep = check_order(*lower, *upper, tol);
    checks["order"] = order_report_json(rep, grid);
    all_pass = all_pass && rep.pass;
    any_check = true;
  }
  if (!any_check) throw SolveError("verify: config names no runnable check");
  j["checks"] = checks;
  j["pass"] = all_pass;
  emit(j);
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a nonlocal quasilinear Dirichlet problem"};
  app.require_subcommand(1);

  DomainArgs dom;
  std::string out_path = "field.csv";
  std::string config_path;

  auto add_domain = [&dom](CLI::App* cmd) {
    cmd->add_option("--domain", dom.domain, "interval or square")
        ->check(CLI::IsMember({"interval", "square"}));
    cmd->add_option("--n", dom.n, "interior nodes per axis")->required();
    cmd->add_option("--extent", dom.extent, "domain side length (default 1)");
  };

  CLI::App* poisson = app.add_subcommand("poisson", "solve -Lap(e) = 1 and write the field");
  add_domain(poisson);
  poisson->add_option("--out", out_path, "CSV output path")->required();

  CLI::App* eigen = app.add_subcommand("eigen", "principal Dirichlet eigenpair of -Lap");
  add_domain(eigen);
  eigen->add_option("--out", out_path, "CSV output path")->required();

  int trials = 100;
  std::uint64_t seed = 1;
  double a = 1.0, b = 1.0;
  int probe_n = 63;
  CLI::App* probe = app.add_subcommand("probe", "finite monotonicity/convexity/coercivity probes");
  probe->add_option("--trials", trials, "random pairs")->required();
  probe->add_option("--seed", seed, "RNG seed")->required();
  probe->add_option("--a", a, "affine stiffness offset")->required();
  probe->add_option("--b", b, "affine stiffness slope")->required();
  probe->add_option("--n", probe_n, "interior nodes")->required();

  double lam = 0.1, mu = 0.1, q = 0.5, p = 2.0;
  std::string out_dir = "out";
  CLI::App* app1 = app.add_subcommand("app1", "concave-convex reaction driver");
  app1->add_option("--lambda", lam)->required();
  app1->add_option("--mu", mu)->required();
  app1->add_option("--q", q)->required();
  app1->add_option("--p", p)->required();
  app1->add_option("--a", a, "affine stiffness offset")->required();
  app1->add_option("--b", b, "affine stiffness slope")->required();
  add_domain(app1);
  app1->add_option("--out", out_dir, "output directory")->required();

  double A2 = 10.0, B2 = 1.0, eta = 2.0;
  CLI::App* app2 = app.add_subcommand("app2", "logistic reaction driver");
  app2->add_option("--A", A2)->required();
  app2->add_option("--B", B2)->required();
  app2->add_option("--q", q)->required();
  app2->add_option("--eta", eta)->required();
  app2->add_option("--a", a, "affine stiffness offset")->required();
  app2->add_option("--b", b, "affine stiffness slope")->required();
  add_domain(app2);
  app2->add_option("--out", out_dir, "output directory")->required();

  CLI::App* solve = app.add_subcommand("solve", "full solve from a JSON config");
  solve->add_option("--config", config_path, "JSON config path")->required();

  CLI::App* verify = app.add_subcommand("verify", "barrier checks on supplied CSV fields");
  verify->add_option("--config", config_path, "JSON config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (poisson->parsed()) return run_poisson(dom, out_path);
    if (eigen->parsed()) return run_eigen(dom, out_path);
    if (probe->parsed()) return run_probe(trials, seed, a, b, probe_n);
    if (app1->parsed()) {
      const Grid grid = make_domain(dom);
      App1Params params;
      params.lam = lam;
      params.mu = mu;
      params.q = q;
      params.p = p;
      params.M = KirchhoffTerm::affine(a, b);
      ordered_json j;
      j["command"] = "app1";
      ordered_json cfg_echo = domain_echo(dom);
      cfg_echo["lambda"] = lam;
      cfg_echo["mu"] = mu;
      cfg_echo["q"] = q;
      cfg_echo["p"] = p;
      cfg_echo["a"] = a;
      cfg_echo["b"] = b;
      cfg_echo["out"] = out_dir;
      j["config"] = cfg_echo;
      return finish_application(std::move(j), params, grid, SolverConfig{}, out_dir);
    }
    if (app2->parsed()) {
      const Grid grid = make_domain(dom);
      App2Params params;
      params.A = A2;
      params.B = B2;
      params.q = q;
      params.eta = eta;
      params.M = KirchhoffTerm::affine(a, b);
      ordered_json j;
      j["command"] = "app2";
      ordered_json cfg_echo = domain_echo(dom);
      cfg_echo["A"] = A2;
      cfg_echo["B"] = B2;
      cfg_echo["q"] = q;
      cfg_echo["eta"] = eta;
      cfg_echo["a"] = a;
      cfg_echo["b"] = b;
      cfg_echo["out"] = out_dir;
      j["config"] = cfg_echo;
      return finish_application(std::move(j), params, grid, SolverConfig{}, out_dir);
    }
    if (solve->parsed()) return run_solve(config_path);
    if (verify->parsed()) return run_verify(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
