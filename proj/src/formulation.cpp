#include "h2tep/formulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "h2tep/errors.hpp"

namespace h2tep {

using milp::Column;
using milp::kInfinity;
using milp::Row;
using milp::Sense;
using milp::Term;

std::string to_string(ModelKind kind) { return kind == ModelKind::kTepH ? "tep_h" : "tep_t"; }

ModelKind parse_model_kind(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != '-' && c != '_') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "teph") return ModelKind::kTepH;
  if (s == "tept") return ModelKind::kTepT;
  throw PreconditionError("unknown model '" + text + "' (expected tep-h or tep-t)");
}

namespace {

const char* prefix(VarKind kind) {
  switch (kind) {
    case VarKind::kGenExisting: return "pG";
    case VarKind::kGenNew: return "pNG";
    case VarKind::kRenOut: return "pR";
    case VarKind::kRenNewOut: return "pNR";
    case VarKind::kRenCur: return "pRCUR";
    case VarKind::kRenNewCur: return "pNRCUR";
    case VarKind::kFlowLine: return "pL";
    case VarKind::kFlowNewLine: return "pNL";
    case VarKind::kAngle: return "theta";
    case VarKind::kShed: return "pSD";
    case VarKind::kHFlow: return "hH";
    case VarKind::kPElec: return "pE";
    case VarKind::kPFc: return "pF";
    case VarKind::kPComp: return "pC";
    case VarKind::kBuildLine: return "vNL";
    case VarKind::kOnlineLine: return "uNL";
    case VarKind::kBuildH: return "vH";
    case VarKind::kOnlineH: return "uH";
  }
  return "x";
}

std::string slot_suffix(int p, int d, int t) {
  return std::to_string(t + 1) + "," + std::to_string(d + 1) + "," + std::to_string(p + 1);
}

}  // namespace

std::string column_name(const VarKey& key) {
  std::string name = prefix(key.kind);
  name += "[" + std::to_string(key.entity) + ",";
  if (key.hour < 0) {
    name += std::to_string(key.period + 1);
  } else {
    name += slot_suffix(key.period, key.day, key.hour);
  }
  return name + "]";
}

int TepModel::column(const VarKey& key) const {
  auto it = index.find(key);
  if (it == index.end()) throw PreconditionError("model has no column " + column_name(key));
  return it->second;
}

std::optional<int> TepModel::find(const VarKey& key) const {
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

double annualized_energy_cost(const ThermalGenerator& gen, const NetworkCase& grid) {
  return grid.horizon.years_per_period * grid.mva_base * grid.horizon.day_weight() * gen.energy_cost;
}

double line_investment_cost(const CandidateLine& line, const PlanningHorizon& horizon, int period) {
  const double remaining = horizon.n_periods - period + 1;
  return line.capital_cost * (1.0 + remaining * line.maintenance_ratio * horizon.years_per_period);
}

double hydrogen_investment_cost(const HydrogenRoute& route, const PlanningHorizon& horizon, int period) {
  const double remaining = horizon.n_periods - period + 1;
  return route.pipeline_cost * (1.0 + remaining * route.maintenance_ratio * horizon.years_per_period) +
         route.fuelcell_cost + route.electrolyzer_cost;
}

std::pair<double, double> plan_investment_cost(const NetworkCase& grid, const InvestmentPlan& plan) {
  double lines = 0.0;
  double hydrogen = 0.0;
  for (std::size_t k = 0; k < grid.candidate_lines.size(); ++k) {
    if (auto p = plan.line_build_period(k)) lines += line_investment_cost(grid.candidate_lines[k], grid.horizon, *p);
  }
  for (std::size_t h = 0; h < grid.hydrogen_routes.size(); ++h) {
    if (auto p = plan.route_build_period(h)) {
      hydrogen += hydrogen_investment_cost(grid.hydrogen_routes[h], grid.horizon, *p);
    }
  }
  return {lines, hydrogen};
}

namespace {

class TepBuilder {
 public:
  TepBuilder(const NetworkCase& grid, ModelKind kind, const InvestmentPlan* plan)
      : grid_(grid), kind_(kind), plan_(plan), demand_(grid.demand_by_bus()) {
    out_.kind = kind;
    out_.model.name = plan ? "OPERATION" : (kind == ModelKind::kTepH ? "TEP_H" : "TEP_T");
    if (plan) out_.fixed_plan = *plan;
  }

  TepModel build() {
    const auto& h = grid_.horizon;
    add_investment_columns();
    for (int p = 0; p < h.n_periods; ++p) {
      for (int d = 0; d < h.typical_days_per_year; ++d) {
        for (int t = 0; t < h.intervals_per_day; ++t) add_slot(p, d, t);
      }
    }
    add_investment_logic();
    if (plan_) {
      const auto [lines, hydrogen] = plan_investment_cost(grid_, *plan_);
      out_.model.objective_offset = lines + (with_hydrogen() ? hydrogen : 0.0);
    }
    return std::move(out_);
  }

 private:
  bool with_hydrogen() const { return kind_ == ModelKind::kTepH; }

  int add(const VarKey& key, double lower, double upper, double cost, bool integer = false) {
    const int j = out_.model.add_column({column_name(key), lower, upper, cost, integer});
    out_.index.emplace(key, j);
    return j;
  }

  void row(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    out_.model.add_row({std::move(name), std::move(terms), sense, rhs, 0.0});
  }

  bool line_online(std::size_t k, int p) const { return plan_->line_online[k][p] != 0; }
  bool route_online(std::size_t r, int p) const { return plan_->h_online[r][p] != 0; }

  void add_investment_columns() {
    if (plan_) return;
    const auto& hz = grid_.horizon;
    for (const auto& line : grid_.candidate_lines) {
      for (int p = 0; p < hz.n_periods; ++p) {
        add({VarKind::kBuildLine, line.id, p}, 0.0, 1.0, line_investment_cost(line, hz, p + 1), true);
        add({VarKind::kOnlineLine, line.id, p}, 0.0, 1.0, 0.0, true);
      }
    }
    if (!with_hydrogen()) return;
    for (const auto& route : grid_.hydrogen_routes) {
      for (int p = 0; p < hz.n_periods; ++p) {
        add({VarKind::kBuildH, route.id, p}, 0.0, 1.0, hydrogen_investment_cost(route, hz, p + 1), true);
        add({VarKind::kOnlineH, route.id, p}, 0.0, 1.0, 0.0, true);
      }
    }
  }

  // Eq. (17)-(19) / (26)-(28), with (17) read as sum_{p'<=p} v >= u, plus
  // monotone online status, v <= u and at most one build event.
  void add_binary_logic(VarKind build, VarKind online, int id, const char* tag) {
    const int periods = grid_.horizon.n_periods;
    const std::string base = std::string(tag) + "[" + std::to_string(id) + ",";
    std::vector<Term> once;
    for (int p = 0; p < periods; ++p) {
      const int v = out_.column({build, id, p});
      const int u = out_.column({online, id, p});
      const auto ps = std::to_string(p + 1) + "]";
      std::vector<Term> cumulative;
      for (int q = 0; q <= p; ++q) cumulative.push_back({out_.column({build, id, q}), 1.0});
      cumulative.push_back({u, -1.0});
      row(base + ps + "_built_by", std::move(cumulative), Sense::kGreaterEqual, 0.0);
      if (p == 0) {
        row(base + ps + "_first", {{v, 1.0}, {u, -1.0}}, Sense::kEqual, 0.0);
      } else {
        const int u_prev = out_.column({online, id, p - 1});
        row(base + ps + "_build_event", {{v, 1.0}, {u, -1.0}, {u_prev, 1.0}}, Sense::kGreaterEqual, 0.0);
        row(base + ps + "_monotone", {{u, 1.0}, {u_prev, -1.0}}, Sense::kGreaterEqual, 0.0);
      }
      row(base + ps + "_online_after_build", {{v, 1.0}, {u, -1.0}}, Sense::kLessEqual, 0.0);
      once.push_back({v, 1.0});
    }
    row(base + "once]", std::move(once), Sense::kLessEqual, 1.0);
  }

  void add_investment_logic() {
    if (plan_) return;
    for (const auto& line : grid_.candidate_lines) {
      add_binary_logic(VarKind::kBuildLine, VarKind::kOnlineLine, line.id, "logicNL");
    }
    if (!with_hydrogen()) return;
    for (const auto& route : grid_.hydrogen_routes) {
      add_binary_logic(VarKind::kBuildH, VarKind::kOnlineH, route.id, "logicH");
    }
  }

  void add_slot(int p, int d, int t) {
    const auto& hz = grid_.horizon;
    const double base = grid_.mva_base;
    const std::string slot = slot_suffix(p, d, t);
    auto tag = [&](const char* what, int id) { return std::string(what) + "[" + std::to_string(id) + "," + slot + "]"; };
    std::vector<std::vector<Term>> balance(grid_.buses.size());
    auto at = [&](int bus_id) -> std::vector<Term>& { return balance[grid_.bus_index(bus_id)]; };

    // Thermal units, Eq. (9)-(10).
    for (const auto& g : grid_.generators) {
      const bool fresh = g.kind == AssetKind::kNew;
      double lo = g.min_output(p);
      double hi = g.max_output(p);
      if (!g.online_in(p)) lo = hi = 0.0;
      const int j = add({fresh ? VarKind::kGenNew : VarKind::kGenExisting, g.id, p, d, t}, lo, hi,
                        annualized_energy_cost(g, grid_));
      at(g.bus).push_back({j, 1.0});
    }

    // Renewables and curtailment, Eq. (7)-(8), (11)-(12).
    for (const auto& r : grid_.renewables) {
      const bool fresh = r.kind == AssetKind::kNew;
      const int out = add({fresh ? VarKind::kRenNewOut : VarKind::kRenOut, r.id, p, d, t}, r.p_min,
                          r.availability(p, d, t), 0.0);
      const int cur = add({fresh ? VarKind::kRenNewCur : VarKind::kRenCur, r.id, p, d, t}, 0.0, kInfinity, 0.0);
      row(tag(fresh ? "curtailNR" : "curtailR", r.id), {{cur, 1.0}, {out, -1.0}}, Sense::kLessEqual, 0.0);
      at(r.bus).push_back({out, 1.0});
      at(r.bus).push_back({cur, -1.0});
    }

    // Bus angles; the slack bus is the reference.
    std::vector<int> angle(grid_.buses.size());
    for (std::size_t n = 0; n < grid_.buses.size(); ++n) {
      const auto& bus = grid_.buses[n];
      const double bound = bus.is_slack ? 0.0 : grid_.angle_bound;
      angle[n] = add({VarKind::kAngle, bus.id, p, d, t}, -bound, bound, 0.0);
    }

    // Existing lines, Eq. (13)-(14).
    for (const auto& line : grid_.lines) {
      const double rating = line.rating(p, d, t);
      const int f = add({VarKind::kFlowLine, line.id, p, d, t}, -rating, rating, 0.0);
      const double b = 1.0 / line.reactance;
      row(tag("dcflow", line.id),
          {{f, 1.0}, {angle[grid_.bus_index(line.from_bus)], -b}, {angle[grid_.bus_index(line.to_bus)], b}},
          Sense::kEqual, 0.0);
      at(line.to_bus).push_back({f, 1.0});
      at(line.from_bus).push_back({f, -1.0});
    }

    // Candidate lines, Eq. (15)-(16).
    for (std::size_t k = 0; k < grid_.candidate_lines.size(); ++k) {
      const auto& line = grid_.candidate_lines[k];
      const double rating = line.rating(p, d, t);
      const double b = 1.0 / line.reactance;
      const int from = angle[grid_.bus_index(line.from_bus)];
      const int to = angle[grid_.bus_index(line.to_bus)];
      const VarKey key{VarKind::kFlowNewLine, line.id, p, d, t};
      if (plan_) {
        const bool on = line_online(k, p);
        const int f = add(key, on ? -rating : 0.0, on ? rating : 0.0, 0.0);
        if (on) row(tag("dcflowNL", line.id), {{f, 1.0}, {from, -b}, {to, b}}, Sense::kEqual, 0.0);
        at(line.to_bus).push_back({f, 1.0});
        at(line.from_bus).push_back({f, -1.0});
        continue;
      }
      const int f = add(key, -rating, rating, 0.0);
      const int u = out_.column({VarKind::kOnlineLine, line.id, p});
      // Tight big-M: |theta_from - theta_to| <= 2 * angle_bound.
      const double big_m = 2.0 * grid_.angle_bound * b;
      row(tag("bigM_up", line.id), {{f, 1.0}, {from, -b}, {to, b}, {u, big_m}}, Sense::kLessEqual, big_m);
      row(tag("bigM_lo", line.id), {{f, 1.0}, {from, -b}, {to, b}, {u, -big_m}}, Sense::kGreaterEqual, -big_m);
      row(tag("capNL_up", line.id), {{f, 1.0}, {u, -rating}}, Sense::kLessEqual, 0.0);
      row(tag("capNL_lo", line.id), {{f, -1.0}, {u, -rating}}, Sense::kLessEqual, 0.0);
      at(line.to_bus).push_back({f, 1.0});
      at(line.from_bus).push_back({f, -1.0});
    }

    // Hydrogen chain, Eq. (20)-(25).
    if (with_hydrogen()) {
      for (std::size_t r = 0; r < grid_.hydrogen_routes.size(); ++r) {
        const auto& route = grid_.hydrogen_routes[r];
        const bool fixed = plan_ != nullptr;
        const double scale = fixed ? (route_online(r, p) ? 1.0 : 0.0) : 1.0;
        const int hflow = add({VarKind::kHFlow, route.id, p, d, t}, 0.0, route.pipeline_capacity * scale, 0.0);
        const int pe = add({VarKind::kPElec, route.id, p, d, t}, 0.0, route.electrolyzer_rating * scale, 0.0);
        const int pf = add({VarKind::kPFc, route.id, p, d, t}, 0.0, route.fuelcell_rating * scale, 0.0);
        const int pc = add({VarKind::kPComp, route.id, p, d, t}, 0.0, kInfinity, 0.0);
        row(tag("electrolyzer", route.id), {{hflow, 1.0}, {pe, -route.eta_e * base}}, Sense::kEqual, 0.0);
        row(tag("fuelcell", route.id), {{pf, base}, {hflow, -route.eta_f}}, Sense::kEqual, 0.0);
        row(tag("compressor", route.id), {{pc, base}, {hflow, -route.eta_c}}, Sense::kEqual, 0.0);
        if (!fixed) {
          const int u = out_.column({VarKind::kOnlineH, route.id, p});
          row(tag("capH", route.id), {{hflow, 1.0}, {u, -route.pipeline_capacity}}, Sense::kLessEqual, 0.0);
          row(tag("capE", route.id), {{pe, 1.0}, {u, -route.electrolyzer_rating}}, Sense::kLessEqual, 0.0);
          row(tag("capF", route.id), {{pf, 1.0}, {u, -route.fuelcell_rating}}, Sense::kLessEqual, 0.0);
        }
        at(route.to_bus).push_back({pf, 1.0});
        at(route.from_bus).push_back({pe, -1.0});
        at(route.from_bus).push_back({pc, -1.0});
      }
    }

    // Load shedding, Eq. (6), and nodal balance, Eq. (5) / (30).
    for (std::size_t n = 0; n < grid_.buses.size(); ++n) {
      const auto& bus = grid_.buses[n];
      const double load = demand_[n](p, d, t);
      const int shed = add({VarKind::kShed, bus.id, p, d, t}, 0.0, load, grid_.shed_penalty);
      balance[n].push_back({shed, 1.0});
      row(tag("balance", bus.id), std::move(balance[n]), Sense::kEqual, load);
    }
    (void)hz;
  }

  const NetworkCase& grid_;
  ModelKind kind_;
  const InvestmentPlan* plan_;
  std::vector<Profile> demand_;
  TepModel out_;
};

}  // namespace

TepModel build_tep_h(const NetworkCase& grid) {
  require_valid(grid);
  return TepBuilder(grid, ModelKind::kTepH, nullptr).build();
}

TepModel build_tep_t(const NetworkCase& grid) {
  require_valid(grid);
  return TepBuilder(grid, ModelKind::kTepT, nullptr).build();
}

TepModel build_operation_lp(const NetworkCase& grid, const InvestmentPlan& plan, ModelKind kind) {
  require_valid(grid);
  check_plan(grid, plan);
  if (kind == ModelKind::kTepT && plan.routes_built() > 0) {
    throw PreconditionError("TEP-T operation cannot use hydrogen routes");
  }
  return TepBuilder(grid, kind, &plan).build();
}

InvestmentPlan extract_plan(const TepModel& tep, std::span<const double> values, const NetworkCase& grid) {
  if (tep.fixed_plan) return *tep.fixed_plan;
  auto plan = InvestmentPlan::none(grid);
  const int periods = grid.horizon.n_periods;
  auto bit = [&](const VarKey& key) {
    auto j = tep.find(key);
    return j && values[*j] > 0.5 ? 1 : 0;
  };
  for (std::size_t k = 0; k < grid.candidate_lines.size(); ++k) {
    const int id = grid.candidate_lines[k].id;
    for (int p = 0; p < periods; ++p) {
      plan.line_built[k][p] = bit({VarKind::kBuildLine, id, p});
      plan.line_online[k][p] = bit({VarKind::kOnlineLine, id, p});
    }
  }
  for (std::size_t h = 0; h < grid.hydrogen_routes.size(); ++h) {
    const int id = grid.hydrogen_routes[h].id;
    for (int p = 0; p < periods; ++p) {
      plan.h_built[h][p] = bit({VarKind::kBuildH, id, p});
      plan.h_online[h][p] = bit({VarKind::kOnlineH, id, p});
    }
  }
  return plan;
}

CostBreakdown cost_breakdown(const TepModel& tep, std::span<const double> values, const NetworkCase& grid) {
  if (static_cast<int>(values.size()) != tep.model.column_count()) {
    throw PreconditionError("solution length " + std::to_string(values.size()) + " does not match " +
                            std::to_string(tep.model.column_count()) + " model columns");
  }
  CostBreakdown out;
  const auto& hz = grid.horizon;
  for (int p = 0; p < hz.n_periods; ++p) {
    for (int d = 0; d < hz.typical_days_per_year; ++d) {
      for (int t = 0; t < hz.intervals_per_day; ++t) {
        for (const auto& g : grid.generators) {
          const auto kind = g.kind == AssetKind::kNew ? VarKind::kGenNew : VarKind::kGenExisting;
          out.generation += annualized_energy_cost(g, grid) * values[tep.column({kind, g.id, p, d, t})];
        }
        for (const auto& bus : grid.buses) {
          out.shed_penalty_value += grid.shed_penalty * values[tep.column({VarKind::kShed, bus.id, p, d, t})];
        }
      }
    }
  }

  const auto plan = extract_plan(tep, values, grid);
  const auto [lines, hydrogen] = plan_investment_cost(grid, plan);
  out.new_lines = lines;
  out.hydrogen = tep.kind == ModelKind::kTepH ? hydrogen : 0.0;
  out.total = out.generation + out.new_lines + out.hydrogen + out.shed_penalty_value;
  return out;
}

}  // namespace h2tep
