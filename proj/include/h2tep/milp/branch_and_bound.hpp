#pragma once

#include <iosfwd>
#include <string_view>

#include "h2tep/milp/lp_solver.hpp"
#include "h2tep/milp/model.hpp"

namespace h2tep::milp {

enum class MilpStatus { kOptimalWithinGap, kInfeasible, kNodeLimit };

std::string_view to_string(MilpStatus status);

struct MilpOptions {
  double gap_target = 1e-3;
  long node_limit = 200000;
  double integrality_tol = 1e-6;
  // Tolerance used when re-checking an incumbent against the model.
  double feasibility_tol = 1e-7;
  // Larger models are refused; the dense basis inverse does not scale.
  int max_rows = 4000;
  LpOptions lp;
  // When set, one progress line per explored node: node, bound, incumbent, gap.
  std::ostream* log = nullptr;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  LpSolution incumbent;
  double best_bound = -kInfinity;
  double gap = kInfinity;
  long nodes_explored = 0;
};

// (incumbent - bound) / max(|incumbent|, 1e-9)
double relative_gap(double incumbent, double bound);

// Best-first branch-and-bound over LP relaxations with depth-first plunging.
// Branches on the most fractional integer column (lowest index on ties).
// Every incumbent is re-verified with check_point before it is accepted.
MilpSolution solve_milp(const Model& model, const MilpOptions& options = {});

}  // namespace h2tep::milp
