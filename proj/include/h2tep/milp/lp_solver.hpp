#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "h2tep/milp/model.hpp"

namespace h2tep::milp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct LpOptions {
  double feasibility_tol = 1e-9;  // internal primal tolerance
  double optimality_tol = 1e-9;   // reduced-cost tolerance, scaled by max |cost|
  double pivot_tol = 1e-9;
  int refactor_interval = 64;
  int max_iterations = 200000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int stall_threshold = 40;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // structural columns only
  double objective = 0.0;
  int iterations = 0;
};

// Solves the continuous relaxation of `model` (integrality ignored) with a
// bounded-variable primal simplex. Throws SolverError on numerical failure.
LpSolution solve_lp(const Model& model, const LpOptions& options = {});

// Same, with column bounds replaced by `lower`/`upper` (used by branching).
LpSolution solve_lp(const Model& model, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& options = {});

}  // namespace h2tep::milp
