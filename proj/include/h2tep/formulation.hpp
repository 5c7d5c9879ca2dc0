#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "h2tep/grid_model.hpp"
#include "h2tep/investment_plan.hpp"
#include "h2tep/milp/model.hpp"

namespace h2tep {

enum class ModelKind { kTepH, kTepT };

std::string to_string(ModelKind kind);
// Accepts "tep-h", "tep_h", "TEP-H" and the TEP-T spellings.
ModelKind parse_model_kind(const std::string& text);

enum class VarKind {
  kGenExisting,  // pG
  kGenNew,       // pNG
  kRenOut,       // pR
  kRenNewOut,    // pNR
  kRenCur,       // pRCUR
  kRenNewCur,    // pNRCUR
  kFlowLine,     // pL
  kFlowNewLine,  // pNL
  kAngle,        // theta
  kShed,         // pSD
  kHFlow,        // hH
  kPElec,        // pE
  kPFc,          // pF
  kPComp,        // pC
  kBuildLine,    // vNL
  kOnlineLine,   // uNL
  kBuildH,       // vH
  kOnlineH,      // uH
};

// Identifies one model column. Entity is the id from the case (bus id for
// angles and shedding). Period/day/hour are 0-based; day and hour are -1 for
// the (entity, period) investment keys.
struct VarKey {
  VarKind kind = VarKind::kGenExisting;
  int entity = 0;
  int period = 0;
  int day = -1;
  int hour = -1;

  auto operator<=>(const VarKey&) const = default;
};

// Column name, e.g. pG[3,14,2,1] (entity, hour, day, period; 1-based time
// indices) or uNL[7,2] (entity, period).
std::string column_name(const VarKey& key);

// A MILP (or LP, when the plan is fixed) together with its column map.
struct TepModel {
  ModelKind kind = ModelKind::kTepH;
  milp::Model model;
  std::map<VarKey, int> index;
  std::optional<InvestmentPlan> fixed_plan;

  int column(const VarKey& key) const;
  std::optional<int> find(const VarKey& key) const;
};

struct CostBreakdown {
  double generation = 0.0;          // C^G
  double new_lines = 0.0;           // C^NL
  double hydrogen = 0.0;            // C^H
  double shed_penalty_value = 0.0;  // M * total shed
  double total = 0.0;
};

// Objective coefficient of one per-unit hour of output:
// N^Y * B^MVA * (365 / N^D) * energy cost.
double annualized_energy_cost(const ThermalGenerator& gen, const NetworkCase& grid);

// Capital plus maintenance for a line built in `period` (1-based):
// C * (1 + (N^P - p + 1) * R^M * N^Y).
double line_investment_cost(const CandidateLine& line, const PlanningHorizon& horizon, int period);

// Pipeline capital with maintenance plus electrolyzer and fuel-cell capital:
// C^H * (1 + (N^P - p + 1) * R^MH * N^Y) + C^F + C^E.
double hydrogen_investment_cost(const HydrogenRoute& route, const PlanningHorizon& horizon, int period);

// Investment totals (lines, hydrogen) implied by a plan.
std::pair<double, double> plan_investment_cost(const NetworkCase& grid, const InvestmentPlan& plan);

// Full TEP-H planning MILP. Requires validate(grid) to be empty.
TepModel build_tep_h(const NetworkCase& grid);

// Benchmark TEP-T: TEP-H without hydrogen columns, rows and costs.
TepModel build_tep_t(const NetworkCase& grid);

// Operation LP for a fixed plan. Investment costs of the plan enter as the
// objective offset so the LP objective is the full planning total.
TepModel build_operation_lp(const NetworkCase& grid, const InvestmentPlan& plan,
                            ModelKind kind = ModelKind::kTepH);

// Recovers the plan encoded in the binary columns of a solution.
InvestmentPlan extract_plan(const TepModel& tep, std::span<const double> values,
                            const NetworkCase& grid);

// Evaluates C^G, C^NL, C^H and the shedding penalty from the solution values
// and the case parameters. Throws PreconditionError on a length mismatch.
CostBreakdown cost_breakdown(const TepModel& tep, std::span<const double> values,
                             const NetworkCase& grid);

}  // namespace h2tep
