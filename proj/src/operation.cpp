#include "h2tep/operation.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "h2tep/case_io.hpp"
#include "h2tep/errors.hpp"
#include "h2tep/milp/lp_solver.hpp"

namespace h2tep {

double OperationResult::total_shed() const {
  double total = 0.0;
  for (const auto& s : shed) total += s.sum();
  return total;
}

namespace {

template <typename Entities, typename KindOf>
std::vector<Profile> read_tensor(const TepModel& tep, std::span<const double> values, const NetworkCase& grid,
                                 const Entities& entities, KindOf kind_of) {
  const auto& hz = grid.horizon;
  std::vector<Profile> out;
  out.reserve(entities.size());
  for (const auto& e : entities) {
    Profile prof(hz);
    for (int p = 0; p < hz.n_periods; ++p) {
      for (int d = 0; d < hz.typical_days_per_year; ++d) {
        for (int t = 0; t < hz.intervals_per_day; ++t) {
          if (auto j = tep.find({kind_of(e), e.id, p, d, t})) prof(p, d, t) = values[*j];
        }
      }
    }
    out.push_back(std::move(prof));
  }
  return out;
}

template <typename E>
auto fixed(VarKind kind) {
  return [kind](const E&) { return kind; };
}

}  // namespace

OperationResult extract_result(const TepModel& tep, std::span<const double> values, const NetworkCase& grid) {
  OperationResult r;
  r.kind = tep.kind;
  r.plan = extract_plan(tep, values, grid);
  r.dispatch = read_tensor(tep, values, grid, grid.generators, [](const ThermalGenerator& g) {
    return g.kind == AssetKind::kNew ? VarKind::kGenNew : VarKind::kGenExisting;
  });
  r.renewable_out = read_tensor(tep, values, grid, grid.renewables, [](const RenewablePlant& p) {
    return p.kind == AssetKind::kNew ? VarKind::kRenNewOut : VarKind::kRenOut;
  });
  r.curtailment = read_tensor(tep, values, grid, grid.renewables, [](const RenewablePlant& p) {
    return p.kind == AssetKind::kNew ? VarKind::kRenNewCur : VarKind::kRenCur;
  });
  r.flows = read_tensor(tep, values, grid, grid.lines, fixed<TransmissionLine>(VarKind::kFlowLine));
  r.new_flows = read_tensor(tep, values, grid, grid.candidate_lines, fixed<CandidateLine>(VarKind::kFlowNewLine));
  r.angles = read_tensor(tep, values, grid, grid.buses, fixed<Bus>(VarKind::kAngle));
  r.shed = read_tensor(tep, values, grid, grid.buses, fixed<Bus>(VarKind::kShed));
  const auto& routes = grid.hydrogen_routes;
  auto h = read_tensor(tep, values, grid, routes, fixed<HydrogenRoute>(VarKind::kHFlow));
  auto pe = read_tensor(tep, values, grid, routes, fixed<HydrogenRoute>(VarKind::kPElec));
  auto pf = read_tensor(tep, values, grid, routes, fixed<HydrogenRoute>(VarKind::kPFc));
  auto pc = read_tensor(tep, values, grid, routes, fixed<HydrogenRoute>(VarKind::kPComp));
  for (std::size_t k = 0; k < routes.size(); ++k) {
    r.hydrogen.push_back({std::move(h[k]), std::move(pe[k]), std::move(pf[k]), std::move(pc[k])});
  }
  r.costs = cost_breakdown(tep, values, grid);
  return r;
}

OperationResult evaluate_plan(const NetworkCase& grid, const InvestmentPlan& plan, ModelKind kind) {
  const auto tep = build_operation_lp(grid, plan, kind);
  const auto lp = milp::solve_lp(tep.model);
  if (lp.status != milp::LpStatus::kOptimal) {
    throw PreconditionError("operation LP is " + std::string(milp::to_string(lp.status)) +
                            "; shedding should always restore feasibility, check the case data");
  }
  return extract_result(tep, lp.values, grid);
}

std::vector<Profile> balance_residuals(const OperationResult& result, const NetworkCase& grid) {
  const auto& hz = grid.horizon;
  std::vector<Profile> res(grid.buses.size(), Profile(hz));
  const bool with_h2 = result.kind == ModelKind::kTepH;
  for (int p = 0; p < hz.n_periods; ++p) {
    for (int d = 0; d < hz.typical_days_per_year; ++d) {
      for (int t = 0; t < hz.intervals_per_day; ++t) {
        auto add = [&](int bus, double v) { res[grid.bus_index(bus)](p, d, t) += v; };
        for (std::size_t g = 0; g < grid.generators.size(); ++g) {
          add(grid.generators[g].bus, result.dispatch[g](p, d, t));
        }
        for (std::size_t k = 0; k < grid.renewables.size(); ++k) {
          add(grid.renewables[k].bus, result.renewable_out[k](p, d, t) - result.curtailment[k](p, d, t));
        }
        for (std::size_t l = 0; l < grid.lines.size(); ++l) {
          add(grid.lines[l].to_bus, result.flows[l](p, d, t));
          add(grid.lines[l].from_bus, -result.flows[l](p, d, t));
        }
        for (std::size_t l = 0; l < grid.candidate_lines.size(); ++l) {
          add(grid.candidate_lines[l].to_bus, result.new_flows[l](p, d, t));
          add(grid.candidate_lines[l].from_bus, -result.new_flows[l](p, d, t));
        }
        if (with_h2) {
          for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) {
            const auto& route = grid.hydrogen_routes[k];
            const auto& s = result.hydrogen[k];
            add(route.to_bus, s.fuel_cell(p, d, t));
            add(route.from_bus, -s.electrolyzer(p, d, t) - s.compressor(p, d, t));
          }
        }
        for (std::size_t n = 0; n < grid.buses.size(); ++n) {
          res[n](p, d, t) -= grid.demand(n, p, d, t) - result.shed[n](p, d, t);
        }
      }
    }
  }
  return res;
}

double max_abs(const std::vector<Profile>& tensors) {
  double worst = 0.0;
  for (const auto& prof : tensors) {
    for (double v : prof.values()) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::vector<ChainViolation> hydrogen_chain_check(const OperationResult& result, const NetworkCase& grid,
                                                 double tol) {
  std::vector<ChainViolation> out;
  const auto& hz = grid.horizon;
  const double base = grid.mva_base;
  for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) {
    const auto& route = grid.hydrogen_routes[k];
    const auto& s = result.hydrogen[k];
    for (int p = 0; p < hz.n_periods; ++p) {
      const double on = result.plan.h_online[k][p] ? 1.0 : 0.0;
      for (int d = 0; d < hz.typical_days_per_year; ++d) {
        for (int t = 0; t < hz.intervals_per_day; ++t) {
          const double h = s.flow(p, d, t);
          const double pe = s.electrolyzer(p, d, t);
          const double pf = s.fuel_cell(p, d, t);
          const double pc = s.compressor(p, d, t);
          auto check = [&](const char* what, double magnitude) {
            if (magnitude > tol) out.push_back({route.id, p, d, t, what, magnitude});
          };
          check("electrolyzer", std::abs(h - route.eta_e * pe * base));
          check("fuel_cell", std::abs(pf * base - route.eta_f * h));
          check("compressor", std::abs(pc * base - route.eta_c * h));
          check("pipeline_cap", h - route.pipeline_capacity * on);
          check("electrolyzer_cap", pe - route.electrolyzer_rating * on);
          check("fuel_cell_cap", pf - route.fuelcell_rating * on);
          check("negative", -std::min({h, pe, pf, pc}));
        }
      }
    }
  }
  return out;
}

std::vector<std::string> plan_usage_check(const OperationResult& result, const NetworkCase& grid, double tol) {
  std::vector<std::string> out;
  const int periods = grid.horizon.n_periods;
  auto monotone = [&](const std::vector<int>& online, const std::string& what, int id) {
    for (int p = 1; p < periods; ++p) {
      if (online[p] < online[p - 1]) out.push_back(what + " " + std::to_string(id) + " goes offline");
    }
  };
  for (std::size_t k = 0; k < grid.candidate_lines.size(); ++k) {
    const int id = grid.candidate_lines[k].id;
    monotone(result.plan.line_online[k], "candidate line", id);
    for (int p = 0; p < periods; ++p) {
      if (result.plan.line_online[k][p]) continue;
      for (int d = 0; d < grid.horizon.typical_days_per_year; ++d) {
        for (int t = 0; t < grid.horizon.intervals_per_day; ++t) {
          if (std::abs(result.new_flows[k](p, d, t)) > tol) {
            out.push_back("offline candidate line " + std::to_string(id) + " carries flow");
          }
        }
      }
    }
  }
  for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) {
    const int id = grid.hydrogen_routes[k].id;
    monotone(result.plan.h_online[k], "hydrogen route", id);
    const auto& s = result.hydrogen[k];
    for (int p = 0; p < periods; ++p) {
      if (result.plan.h_online[k][p]) continue;
      for (int d = 0; d < grid.horizon.typical_days_per_year; ++d) {
        for (int t = 0; t < grid.horizon.intervals_per_day; ++t) {
          const double used = std::abs(s.flow(p, d, t)) + std::abs(s.electrolyzer(p, d, t)) +
                              std::abs(s.fuel_cell(p, d, t)) + std::abs(s.compressor(p, d, t));
          if (used > tol) out.push_back("offline hydrogen route " + std::to_string(id) + " is used");
        }
      }
    }
  }
  return out;
}

nlohmann::json cost_to_json(const CostBreakdown& costs) {
  return {{"generation", costs.generation},
          {"new_lines", costs.new_lines},
          {"hydrogen", costs.hydrogen},
          {"shed_penalty", costs.shed_penalty_value},
          {"total", costs.total}};
}

nlohmann::json result_to_json(const OperationResult& result, const NetworkCase& grid) {
  auto series = [](const auto& entities, const std::vector<Profile>& tensors) {
    auto arr = nlohmann::json::array();
    for (std::size_t k = 0; k < entities.size(); ++k) {
      arr.push_back({{"id", entities[k].id}, {"values", profile_to_json(tensors[k])}});
    }
    return arr;
  };
  nlohmann::json doc;
  doc["model"] = to_string(result.kind);
  doc["plan"] = plan_to_json(grid, result.plan);
  doc["costs"] = cost_to_json(result.costs);
  doc["dispatch"] = series(grid.generators, result.dispatch);
  doc["renewable_out"] = series(grid.renewables, result.renewable_out);
  doc["curtailment"] = series(grid.renewables, result.curtailment);
  doc["flows"] = series(grid.lines, result.flows);
  doc["new_flows"] = series(grid.candidate_lines, result.new_flows);
  doc["angles"] = series(grid.buses, result.angles);
  doc["shed"] = series(grid.buses, result.shed);
  auto h2 = nlohmann::json::array();
  for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) {
    const auto& s = result.hydrogen[k];
    h2.push_back({{"id", grid.hydrogen_routes[k].id},
                  {"h", profile_to_json(s.flow)},
                  {"pE", profile_to_json(s.electrolyzer)},
                  {"pF", profile_to_json(s.fuel_cell)},
                  {"pC", profile_to_json(s.compressor)}});
  }
  doc["hydrogen"] = std::move(h2);
  doc["units"] = "per-unit power, MWh-H2/h hydrogen flow, radians, M$";
  return doc;
}

void write_result_csv(const OperationResult& result, const NetworkCase& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(12);
  out << "quantity,entity,period,day,hour,value\n";
  const auto& hz = grid.horizon;
  auto dump = [&](const char* name, int id, const Profile& prof) {
    for (int p = 0; p < hz.n_periods; ++p) {
      for (int d = 0; d < hz.typical_days_per_year; ++d) {
        for (int t = 0; t < hz.intervals_per_day; ++t) {
          out << name << ',' << id << ',' << p + 1 << ',' << d + 1 << ',' << t + 1 << ',' << prof(p, d, t) << '\n';
        }
      }
    }
  };
  for (std::size_t k = 0; k < grid.generators.size(); ++k) dump("pG", grid.generators[k].id, result.dispatch[k]);
  for (std::size_t k = 0; k < grid.renewables.size(); ++k) {
    dump("pR", grid.renewables[k].id, result.renewable_out[k]);
    dump("pRCUR", grid.renewables[k].id, result.curtailment[k]);
  }
  for (std::size_t k = 0; k < grid.lines.size(); ++k) dump("pL", grid.lines[k].id, result.flows[k]);
  for (std::size_t k = 0; k < grid.candidate_lines.size(); ++k) {
    dump("pNL", grid.candidate_lines[k].id, result.new_flows[k]);
  }
  for (std::size_t k = 0; k < grid.buses.size(); ++k) {
    dump("theta", grid.buses[k].id, result.angles[k]);
    dump("pSD", grid.buses[k].id, result.shed[k]);
  }
  for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) {
    const int id = grid.hydrogen_routes[k].id;
    dump("hH", id, result.hydrogen[k].flow);
    dump("pE", id, result.hydrogen[k].electrolyzer);
    dump("pF", id, result.hydrogen[k].fuel_cell);
    dump("pC", id, result.hydrogen[k].compressor);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace h2tep
