#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "h2tep/grid_model.hpp"

namespace h2tep {

// 0/1 status per (candidate position, period index).
using StatusGrid = std::vector<std::vector<int>>;

// Build events (v) and online status (u) for every candidate line and
// hydrogen route, indexed by position in the case's candidate lists.
struct InvestmentPlan {
  StatusGrid line_built;
  StatusGrid line_online;
  StatusGrid h_built;
  StatusGrid h_online;

  // Nothing built.
  static InvestmentPlan none(const NetworkCase& grid);
  // Build periods are 1-based; nullopt means never built. Online status
  // follows as "built in this or an earlier period".
  static InvestmentPlan from_build_periods(const NetworkCase& grid,
                                           const std::vector<std::optional<int>>& line_periods,
                                           const std::vector<std::optional<int>>& route_periods);

  std::optional<int> line_build_period(std::size_t k) const;
  std::optional<int> route_build_period(std::size_t h) const;
  int routes_built() const;
  int lines_built() const;

  bool operator==(const InvestmentPlan&) const = default;
};

// Throws PreconditionError when the plan does not cover every candidate and
// period, builds a candidate more than once, or has online status different
// from "built in some earlier-or-equal period".
void check_plan(const NetworkCase& grid, const InvestmentPlan& plan);

// {"candidate_lines": [{"id", "build_period", "built", "online"}...],
//  "hydrogen_routes": [...]}; build_period is 1-based or null.
nlohmann::json plan_to_json(const NetworkCase& grid, const InvestmentPlan& plan);

// Accepts either explicit "built"/"online" arrays or a "build_period" per
// entry; candidates missing from the document are never built.
InvestmentPlan plan_from_json(const NetworkCase& grid, const nlohmann::json& doc);

}  // namespace h2tep
