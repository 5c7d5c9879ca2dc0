#include "h2tep/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "h2tep/errors.hpp"

namespace h2tep {

PlanningOutcome solve_planning(const NetworkCase& grid, ModelKind kind, const milp::MilpOptions& options) {
  const auto tep = kind == ModelKind::kTepH ? build_tep_h(grid) : build_tep_t(grid);
  const auto sol = milp::solve_milp(tep.model, options);
  if (!sol.has_incumbent) {
    throw SolverError(std::string("planning model ended ") + std::string(milp::to_string(sol.status)) +
                      " without a feasible plan");
  }
  PlanningOutcome out;
  out.status = sol.status;
  out.gap = sol.gap;
  out.best_bound = sol.best_bound;
  out.nodes = sol.nodes_explored;
  out.milp_objective = sol.incumbent.objective;
  const auto plan = extract_plan(tep, sol.incumbent.values, grid);
  out.result = evaluate_plan(grid, plan, kind);
  return out;
}

NetworkCase apply_round_trip(const NetworkCase& grid, double round_trip) {
  if (!(round_trip > 0.0 && round_trip <= 1.0)) throw PreconditionError("round trip must lie in (0,1]");
  NetworkCase out = grid;
  for (auto& route : out.hydrogen_routes) {
    const double factor = std::sqrt(round_trip / route.round_trip());
    route.eta_e *= factor;
    route.eta_f *= factor;
    if (route.eta_e > 1.0 + 1e-12 || route.eta_f > 1.0 + 1e-12) {
      throw PreconditionError("round trip " + std::to_string(round_trip) + " pushes an efficiency of route " +
                              std::to_string(route.id) + " above 1");
    }
    route.eta_e = std::min(route.eta_e, 1.0);
    route.eta_f = std::min(route.eta_f, 1.0);
  }
  return out;
}

std::vector<ScenarioPoint> sweep_points(const SweepAxis& axes) {
  auto levels = [](const std::vector<double>& v) {
    std::vector<std::optional<double>> out(v.begin(), v.end());
    if (out.empty()) out.push_back(std::nullopt);
    return out;
  };
  std::vector<ScenarioPoint> points;
  for (auto pen : levels(axes.penetration_levels)) {
    for (auto rt : levels(axes.round_trip_levels)) {
      for (auto cr : levels(axes.cost_reductions)) points.push_back({pen, rt, cr});
    }
  }
  return points;
}

NetworkCase apply_point(const NetworkCase& grid, const ScenarioPoint& point) {
  NetworkCase out = grid;
  if (point.penetration) out = scale_renewable_penetration(out, *point.penetration);
  if (point.round_trip) out = apply_round_trip(out, *point.round_trip);
  if (point.cost_reduction) out = apply_hydrogen_cost_reduction(out, *point.cost_reduction);
  return out;
}

ScenarioRow make_row(const ScenarioPoint& point, const NetworkCase& grid, const PlanningOutcome& outcome) {
  ScenarioRow row;
  row.point = point;
  row.status = outcome.status == milp::MilpStatus::kNodeLimit ? "node_limit" : "ok";
  const auto& plan = outcome.result.plan;
  row.pipelines_built = plan.routes_built();
  row.lines_built = plan.lines_built();
  for (std::size_t h = 0; h < grid.hydrogen_routes.size(); ++h) {
    if (auto p = plan.route_build_period(h)) {
      const auto& labels = grid.horizon.period_labels;
      row.construction_periods.push_back(static_cast<std::size_t>(*p) <= labels.size() ? labels[*p - 1]
                                                                                      : std::to_string(*p));
    }
  }
  const auto& c = outcome.result.costs;
  row.hydrogen_investment = c.hydrogen;
  row.line_investment = c.new_lines;
  row.generation_cost = c.generation;
  row.shed_penalty = c.shed_penalty_value;
  row.total = c.total;
  row.gap = outcome.gap;
  return row;
}

std::vector<ScenarioRow> run_sweep(const NetworkCase& grid, const SweepAxis& axes, ModelKind kind,
                                   const milp::MilpOptions& options, unsigned workers) {
  const auto points = sweep_points(axes);
  std::vector<ScenarioRow> rows(points.size());
  milp::MilpOptions quiet = options;
  quiet.log = nullptr;  // node logs from several threads would interleave
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
      try {
        const auto scenario = apply_point(grid, points[i]);
        rows[i] = make_row(points[i], scenario, solve_planning(scenario, kind, quiet));
      } catch (const std::exception& e) {
        rows[i] = ScenarioRow{};
        rows[i].point = points[i];
        rows[i].status = "failed";
        rows[i].error = e.what();
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, points.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

namespace {

std::string format_level(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

std::string table_stem(ModelKind kind, const SweepAxis& axes) {
  std::string stem = to_string(kind);
  auto family = [&](const char* name, const std::vector<double>& levels) {
    if (levels.empty()) return;
    stem += std::string("_") + name;
    for (double v : levels) stem += "-" + format_level(v);
  };
  family("penetration", axes.penetration_levels);
  family("round_trip", axes.round_trip_levels);
  family("cost_reduction", axes.cost_reductions);
  if (stem == to_string(kind)) stem += "_base";
  return stem;
}

std::vector<std::filesystem::path> emit_tables(const std::vector<ScenarioRow>& rows, const std::string& stem,
                                               const std::filesystem::path& dir) {
  if (rows.empty()) throw PreconditionError("no scenario rows to emit");
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (stem + ".csv");
  const auto json_path = dir / (stem + ".json");

  auto level = [](const std::optional<double>& v) { return v ? format_level(*v) : std::string("base"); };
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  csv << std::setprecision(12);
  csv << "penetration,round_trip,cost_reduction,status,pipelines_built,lines_built,construction_periods,"
         "hydrogen_investment,line_investment,generation_cost,shed_penalty,total,gap,error\n";
  auto doc = nlohmann::json::array();
  for (const auto& r : rows) {
    csv << level(r.point.penetration) << ',' << level(r.point.round_trip) << ',' << level(r.point.cost_reduction)
        << ',' << r.status << ',' << r.pipelines_built << ',' << r.lines_built << ','
        << csv_field(join(r.construction_periods, ";")) << ',' << r.hydrogen_investment << ','
        << r.line_investment << ',' << r.generation_cost << ',' << r.shed_penalty << ',' << r.total << ','
        << r.gap << ',' << csv_field(r.error) << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    doc.push_back({{"penetration", opt(r.point.penetration)},
                   {"round_trip", opt(r.point.round_trip)},
                   {"cost_reduction", opt(r.point.cost_reduction)},
                   {"status", r.status},
                   {"pipelines_built", r.pipelines_built},
                   {"lines_built", r.lines_built},
                   {"construction_periods", r.construction_periods},
                   {"hydrogen_investment", r.hydrogen_investment},
                   {"line_investment", r.line_investment},
                   {"generation_cost", r.generation_cost},
                   {"shed_penalty", r.shed_penalty},
                   {"total", r.total},
                   {"gap", r.gap},
                   {"error", r.error}});
  }
  if (!csv) throw IoError("failed writing " + csv_path.string());
  std::ofstream js(json_path);
  if (!js) throw IoError("cannot write " + json_path.string());
  js << doc.dump(2) << '\n';
  return {csv_path, json_path};
}

std::vector<std::filesystem::path> emit_timeseries(const OperationResult& result, const NetworkCase& grid,
                                                   const std::vector<int>& route_ids,
                                                   const std::filesystem::path& dir) {
  std::vector<std::size_t> routes;
  if (route_ids.empty()) {
    for (std::size_t k = 0; k < grid.hydrogen_routes.size(); ++k) routes.push_back(k);
  } else {
    for (int id : route_ids) routes.push_back(grid.route_index(id));
  }
  std::filesystem::create_directories(dir);
  const auto& hz = grid.horizon;
  const double base = grid.mva_base;
  std::vector<std::filesystem::path> written;
  for (int p = 0; p < hz.n_periods; ++p) {
    for (int d = 0; d < hz.typical_days_per_year; ++d) {
      const auto path = dir / ("hydrogen_p" + std::to_string(p + 1) + "_d" + std::to_string(d + 1) + ".csv");
      std::ofstream out(path);
      if (!out) throw IoError("cannot write " + path.string());
      out << std::setprecision(12) << "hour";
      for (auto k : routes) {
        const auto id = std::to_string(grid.hydrogen_routes[k].id);
        out << ",h_" << id << "_MWh,pE_" << id << "_MW,pF_" << id << "_MW,pC_" << id << "_MW";
      }
      out << '\n';
      for (int t = 0; t < hz.intervals_per_day; ++t) {
        out << t + 1;
        for (auto k : routes) {
          const auto& s = result.hydrogen[k];
          out << ',' << s.flow(p, d, t) << ',' << s.electrolyzer(p, d, t) * base << ','
              << s.fuel_cell(p, d, t) * base << ',' << s.compressor(p, d, t) * base;
        }
        out << '\n';
      }
      if (!out) throw IoError("failed writing " + path.string());
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace h2tep
