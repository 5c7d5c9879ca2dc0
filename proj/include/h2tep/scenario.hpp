#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "h2tep/formulation.hpp"
#include "h2tep/milp/branch_and_bound.hpp"
#include "h2tep/operation.hpp"

namespace h2tep {

// Result of solving a planning model. The schedules come from re-solving the
// operation LP of the MILP plan, so offline assets are exactly zero.
struct PlanningOutcome {
  milp::MilpStatus status = milp::MilpStatus::kInfeasible;
  double gap = 0.0;
  double best_bound = 0.0;
  long nodes = 0;
  double milp_objective = 0.0;
  OperationResult result;
};

// Throws SolverError when no incumbent was found.
PlanningOutcome solve_planning(const NetworkCase& grid, ModelKind kind, const milp::MilpOptions& options);

// Sets every route's round-trip efficiency to `round_trip` by scaling eta_e
// and eta_f by the same factor sqrt(round_trip / current).
NetworkCase apply_round_trip(const NetworkCase& grid, double round_trip);

// Empty lists leave that parameter at its base value.
struct SweepAxis {
  std::vector<double> penetration_levels;
  std::vector<double> round_trip_levels;
  std::vector<double> cost_reductions;
};

struct ScenarioPoint {
  std::optional<double> penetration;
  std::optional<double> round_trip;
  std::optional<double> cost_reduction;
};

// Lexicographic in (penetration, round trip, cost reduction).
std::vector<ScenarioPoint> sweep_points(const SweepAxis& axes);
NetworkCase apply_point(const NetworkCase& grid, const ScenarioPoint& point);

struct ScenarioRow {
  ScenarioPoint point;
  std::string status = "ok";  // ok, node_limit or failed
  std::string error;
  int pipelines_built = 0;
  int lines_built = 0;
  std::vector<std::string> construction_periods;  // labels of route build periods
  double hydrogen_investment = 0.0;
  double line_investment = 0.0;
  double generation_cost = 0.0;
  double shed_penalty = 0.0;
  double total = 0.0;
  double gap = 0.0;
};

ScenarioRow make_row(const ScenarioPoint& point, const NetworkCase& grid, const PlanningOutcome& outcome);

// Solves every axis point with up to `workers` threads (0 = hardware
// concurrency). A failing point yields a row with status "failed".
std::vector<ScenarioRow> run_sweep(const NetworkCase& grid, const SweepAxis& axes, ModelKind kind,
                                   const milp::MilpOptions& options, unsigned workers = 0);

// File stem {model}_{axis-values}, e.g. tep_h_round_trip-0.4-0.8.
std::string table_stem(ModelKind kind, const SweepAxis& axes);

// Writes <dir>/<stem>.csv and <dir>/<stem>.json; returns the two paths.
std::vector<std::filesystem::path> emit_tables(const std::vector<ScenarioRow>& rows, const std::string& stem,
                                               const std::filesystem::path& dir);

// One CSV per (period, day): hydrogen_p{P}_d{D}.csv with an hour column and
// h (MWh-H2/h), pE, pF, pC (MW) per requested route. Empty ids = all routes.
std::vector<std::filesystem::path> emit_timeseries(const OperationResult& result, const NetworkCase& grid,
                                                   const std::vector<int>& route_ids,
                                                   const std::filesystem::path& dir);

}  // namespace h2tep
