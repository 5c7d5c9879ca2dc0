#include "h2tep/investment_plan.hpp"

#include "h2tep/errors.hpp"

namespace h2tep {

using nlohmann::json;

namespace {

StatusGrid zeros(std::size_t count, int periods) {
  return StatusGrid(count, std::vector<int>(periods, 0));
}

void mark_build(StatusGrid& built, StatusGrid& online, std::size_t k, std::optional<int> period,
                int n_periods) {
  if (!period) return;
  if (*period < 1 || *period > n_periods) {
    throw PreconditionError("build period " + std::to_string(*period) + " outside 1.." +
                            std::to_string(n_periods));
  }
  built[k][*period - 1] = 1;
  for (int p = *period - 1; p < n_periods; ++p) online[k][p] = 1;
}

std::optional<int> first_build(const StatusGrid& built, std::size_t k) {
  for (std::size_t p = 0; p < built[k].size(); ++p) {
    if (built[k][p]) return static_cast<int>(p) + 1;
  }
  return std::nullopt;
}

void check_grid(const StatusGrid& built, const StatusGrid& online, std::size_t count, int periods,
                const char* what) {
  if (built.size() != count || online.size() != count) {
    throw PreconditionError(std::string("plan does not cover every ") + what);
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (static_cast<int>(built[k].size()) != periods || static_cast<int>(online[k].size()) != periods) {
      throw PreconditionError(std::string("plan period count mismatch for ") + what);
    }
    int builds = 0;
    for (int p = 0; p < periods; ++p) {
      if ((built[k][p] != 0 && built[k][p] != 1) || (online[k][p] != 0 && online[k][p] != 1)) {
        throw PreconditionError("plan entries must be 0 or 1");
      }
      builds += built[k][p];
      const int expected = builds > 0 ? 1 : 0;
      if (online[k][p] != expected) {
        throw PreconditionError(std::string("inconsistent plan: ") + what + " " + std::to_string(k) +
                                " online status in period " + std::to_string(p + 1) +
                                " does not follow its build period");
      }
    }
    if (builds > 1) {
      throw PreconditionError(std::string("inconsistent plan: ") + what + " built more than once");
    }
  }
}

}  // namespace

InvestmentPlan InvestmentPlan::none(const NetworkCase& grid) {
  const int periods = grid.horizon.n_periods;
  InvestmentPlan plan;
  plan.line_built = zeros(grid.candidate_lines.size(), periods);
  plan.line_online = plan.line_built;
  plan.h_built = zeros(grid.hydrogen_routes.size(), periods);
  plan.h_online = plan.h_built;
  return plan;
}

InvestmentPlan InvestmentPlan::from_build_periods(const NetworkCase& grid,
                                                  const std::vector<std::optional<int>>& line_periods,
                                                  const std::vector<std::optional<int>>& route_periods) {
  if (line_periods.size() != grid.candidate_lines.size() ||
      route_periods.size() != grid.hydrogen_routes.size()) {
    throw PreconditionError("plan does not cover every candidate");
  }
  auto plan = none(grid);
  const int periods = grid.horizon.n_periods;
  for (std::size_t k = 0; k < line_periods.size(); ++k) {
    mark_build(plan.line_built, plan.line_online, k, line_periods[k], periods);
  }
  for (std::size_t h = 0; h < route_periods.size(); ++h) {
    mark_build(plan.h_built, plan.h_online, h, route_periods[h], periods);
  }
  return plan;
}

std::optional<int> InvestmentPlan::line_build_period(std::size_t k) const { return first_build(line_built, k); }
std::optional<int> InvestmentPlan::route_build_period(std::size_t h) const { return first_build(h_built, h); }

int InvestmentPlan::routes_built() const {
  int n = 0;
  for (std::size_t h = 0; h < h_built.size(); ++h) n += route_build_period(h) ? 1 : 0;
  return n;
}

int InvestmentPlan::lines_built() const {
  int n = 0;
  for (std::size_t k = 0; k < line_built.size(); ++k) n += line_build_period(k) ? 1 : 0;
  return n;
}

void check_plan(const NetworkCase& grid, const InvestmentPlan& plan) {
  const int periods = grid.horizon.n_periods;
  check_grid(plan.line_built, plan.line_online, grid.candidate_lines.size(), periods, "candidate line");
  check_grid(plan.h_built, plan.h_online, grid.hydrogen_routes.size(), periods, "hydrogen route");
}

json plan_to_json(const NetworkCase& grid, const InvestmentPlan& plan) {
  json doc;
  auto entries = [&](const auto& items, const StatusGrid& built, const StatusGrid& online) {
    json arr = json::array();
    for (std::size_t k = 0; k < items.size(); ++k) {
      const auto period = first_build(built, k);
      json e = {{"id", items[k].id}, {"built", built[k]}, {"online", online[k]}};
      e["build_period"] = period ? json(*period) : json(nullptr);
      if (period) e["build_period_label"] = grid.horizon.period_labels[*period - 1];
      arr.push_back(std::move(e));
    }
    return arr;
  };
  doc["candidate_lines"] = entries(grid.candidate_lines, plan.line_built, plan.line_online);
  doc["hydrogen_routes"] = entries(grid.hydrogen_routes, plan.h_built, plan.h_online);
  return doc;
}

InvestmentPlan plan_from_json(const NetworkCase& grid, const json& doc) {
  if (!doc.is_object()) throw ParseError("plan document must be a JSON object");
  auto plan = InvestmentPlan::none(grid);
  const int periods = grid.horizon.n_periods;

  auto read = [&](const char* key, const auto& items, StatusGrid& built, StatusGrid& online) {
    if (!doc.contains(key)) return;
    const auto& arr = doc.at(key);
    if (!arr.is_array()) throw ParseError(std::string("plan: '") + key + "' must be an array");
    for (const auto& e : arr) {
      if (!e.is_object() || !e.contains("id")) throw ParseError(std::string("plan: entries of '") + key + "' need an id");
      const int id = e.at("id").get<int>();
      std::size_t pos = items.size();
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (items[k].id == id) pos = k;
      }
      if (pos == items.size()) {
        throw ReferenceError(std::string("plan references unknown ") + key + " id " + std::to_string(id));
      }
      if (e.contains("built")) {
        built[pos] = e.at("built").get<std::vector<int>>();
        online[pos] = e.contains("online") ? e.at("online").get<std::vector<int>>() : std::vector<int>{};
      } else if (e.contains("build_period") && !e.at("build_period").is_null()) {
        mark_build(built, online, pos, e.at("build_period").get<int>(), periods);
      }
    }
  };
  try {
    read("candidate_lines", grid.candidate_lines, plan.line_built, plan.line_online);
    read("hydrogen_routes", grid.hydrogen_routes, plan.h_built, plan.h_online);
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan document: ") + e.what());
  }
  return plan;
}

}  // namespace h2tep
