#include "kirchhoff/json_report.hpp"

#include <cmath>
#include <cstdio>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(std::string& out, const ordered_json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        dump_value(out, it.value(), depth + 1);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out += pad_in;
        dump_value(out, j[k], depth + 1);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::string:
      append_escaped(out, j.get<std::string>());
      return;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) throw SolveError("dump_report: non-finite number");
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out += buf;
      return;
    }
    case ordered_json::value_t::null:
      out += "null";
      return;
    default:
      throw SolveError("dump_report: unsupported JSON value");
  }
}

ordered_json node_json(const Grid& grid, std::size_t node) {
  ordered_json j;
  j["index"] = static_cast<std::uint64_t>(node);
  const Vec x = grid.coord(node);
  j["x"] = x[0];
  if (grid.dim == 2) j["y"] = x[1];
  return j;
}

}  // namespace

std::string dump_report(const ordered_json& j) {
  std::string out;
  dump_value(out, j, 0);
  out += '\n';
  return out;
}

ordered_json solve_report_json(const SolveReport& rep) {
  ordered_json j;
  j["s_star"] = rep.s_star;
  j["residual_sup"] = rep.residual_sup;
  j["iters_inner"] = rep.iters_inner;
  j["iters_outer"] = rep.iters_outer;
  j["R_final"] = rep.R_final;
  j["grad_sup"] = rep.grad_sup;
  j["margin_lower"] = rep.margin_lower;
  j["margin_upper"] = rep.margin_upper;
  j["apriori_K"] = rep.apriori_K;
  j["accepted"] = rep.accepted;
  return j;
}

ordered_json inequality_report_json(const InequalityReport& rep, const Grid& grid) {
  ordered_json j;
  j["pass"] = rep.pass;
  j["worst_margin"] = rep.worst_margin;
  j["worst_node"] = node_json(grid, rep.worst_node);
  return j;
}

ordered_json order_report_json(const OrderReport& rep, const Grid& grid) {
  ordered_json j;
  j["pass"] = rep.pass;
  j["min_gap"] = rep.min_gap;
  j["argmin_node"] = node_json(grid, rep.argmin_node);
  return j;
}

ordered_json probe_report_json(const OperatorProbeReport& rep) {
  ordered_json j;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["min_monotone_ip"] = rep.min_monotone_ip;
  j["min_monotone_rel"] = rep.min_monotone_rel;
  j["monotone_zero_at_equal"] = rep.monotone_zero_at_equal;
  j["max_convexity_gap"] = rep.max_convexity_gap;
  ordered_json rays = ordered_json::array();
  for (const CoercivityRay& ray : rep.rays) {
    ordered_json r;
    r["ts"] = ray.ts;
    r["ratios"] = ray.ratios;
    r["increasing_tail"] = ray.increasing_tail;
    r["crossing_t"] = ray.crossing_t;
    rays.push_back(r);
  }
  j["rays"] = rays;
  j["monotone_pass"] = rep.monotone_pass;
  j["convex_pass"] = rep.convex_pass;
  j["coercive_pass"] = rep.coercive_pass;
  j["pass"] = rep.pass;
  return j;
}

ordered_json application_details_json(const ApplicationReport& rep) {
  const Grid& grid = rep.solve.u.grid;
  ordered_json j;
  if (rep.S > 0.0) {
    j["S"] = rep.S;
    j["psi_min"] = rep.psi_min;
  }
  j["delta"] = rep.delta;
  j["alpha_build"] = rep.alpha_build;
  j["alpha_star"] = rep.alpha_star;
  j["penalty_sup"] = rep.solve.penalty_sup;
  j["order_tol"] = rep.solve.order_tol_used;
  j["supersolution"] = inequality_report_json(rep.super_check, grid);
  j["subsolution"] = inequality_report_json(rep.sub_check, grid);
  j["order_lower"] = order_report_json(rep.order_lower, grid);
  j["order_upper"] = order_report_json(rep.order_upper, grid);
  j["checks_pass"] = rep.checks_pass;
  return j;
}

}  // namespace kirchhoff
