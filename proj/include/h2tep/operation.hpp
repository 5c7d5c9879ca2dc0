#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "h2tep/formulation.hpp"

namespace h2tep {

struct HydrogenSeries {
  Profile flow;          // h, MWh-H2 per hour
  Profile electrolyzer;  // pE, per-unit
  Profile fuel_cell;     // pF, per-unit
  Profile compressor;    // pC, per-unit
};

// Schedules of one solved model. Vectors follow the ordering of the
// corresponding NetworkCase collections.
struct OperationResult {
  ModelKind kind = ModelKind::kTepH;
  InvestmentPlan plan;
  std::vector<Profile> dispatch;       // generators
  std::vector<Profile> renewable_out;  // renewables
  std::vector<Profile> curtailment;    // renewables
  std::vector<Profile> flows;          // existing lines
  std::vector<Profile> new_flows;      // candidate lines
  std::vector<Profile> angles;         // buses
  std::vector<Profile> shed;           // buses
  std::vector<HydrogenSeries> hydrogen;  // routes; zero for TEP-T
  CostBreakdown costs;

  double operation_cost() const { return costs.generation + costs.shed_penalty_value; }
  double total_shed() const;
};

// Reads every tensor from a solution of `tep` (planning MILP or operation LP).
OperationResult extract_result(const TepModel& tep, std::span<const double> values, const NetworkCase& grid);

// Solves the operation LP of a fixed plan. Throws PreconditionError on an
// inconsistent plan or when the LP is infeasible (only possible with bad data).
OperationResult evaluate_plan(const NetworkCase& grid, const InvestmentPlan& plan,
                              ModelKind kind = ModelKind::kTepH);

// Residual of the nodal balance per bus: injections - (load - shed).
std::vector<Profile> balance_residuals(const OperationResult& result, const NetworkCase& grid);
double max_abs(const std::vector<Profile>& tensors);

struct ChainViolation {
  int route = 0;
  int period = 0;
  int day = 0;
  int hour = 0;
  std::string check;  // electrolyzer, fuel_cell, compressor, pipeline_cap, ...
  double magnitude = 0.0;
};

// Conversion equalities and capacity limits (scaled by online status) for
// every route-hour. Entries are reported when the error exceeds `tol`.
std::vector<ChainViolation> hydrogen_chain_check(const OperationResult& result, const NetworkCase& grid,
                                                 double tol = 1e-6);

// Violations of: offline candidates carrying flow, non-monotone online status.
std::vector<std::string> plan_usage_check(const OperationResult& result, const NetworkCase& grid,
                                          double tol = 1e-9);

nlohmann::json cost_to_json(const CostBreakdown& costs);
nlohmann::json result_to_json(const OperationResult& result, const NetworkCase& grid);

// One row per index tuple: quantity,entity,period,day,hour,value.
void write_result_csv(const OperationResult& result, const NetworkCase& grid,
                      const std::filesystem::path& path);

}  // namespace h2tep
