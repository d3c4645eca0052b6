#pragma once

#include <string>

#include <json.hpp>

#include "kirchhoff/applications.hpp"
#include "kirchhoff/ordering.hpp"
#include "kirchhoff/solver.hpp"

namespace kirchhoff {

using ordered_json = nlohmann::ordered_json;

// Deterministic dump: insertion-ordered keys, two-space indent, and every
// floating-point number rendered with 17 significant digits so identical runs
// serialize byte-identically and values round-trip exactly.
std::string dump_report(const ordered_json& j);

// The ten contracted SolveReport keys, in contract order.
ordered_json solve_report_json(const SolveReport& rep);
ordered_json inequality_report_json(const InequalityReport& rep, const Grid& grid);
ordered_json order_report_json(const OrderReport& rep, const Grid& grid);
ordered_json probe_report_json(const OperatorProbeReport& rep);
ordered_json application_details_json(const ApplicationReport& rep);

}  // namespace kirchhoff
