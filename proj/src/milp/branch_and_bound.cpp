#include "h2tep/milp/branch_and_bound.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <vector>

#include "h2tep/errors.hpp"

namespace h2tep::milp {

std::string_view to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimalWithinGap:
      return "optimal_within_gap";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kNodeLimit:
      return "node_limit";
  }
  return "unknown";
}

double relative_gap(double incumbent, double bound) {
  if (!std::isfinite(incumbent)) return kInfinity;
  if (!std::isfinite(bound)) return kInfinity;
  return std::max(0.0, incumbent - bound) / std::max(std::abs(incumbent), 1e-9);
}

namespace {

struct Node {
  long id = 0;
  double bound = -kInfinity;  // parent LP bound until solved
  std::vector<double> lower;  // bounds of the integer columns only
  std::vector<double> upper;
};

struct NodeOrder {
  // Min-heap on (bound, id).
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, const MilpOptions& options)
      : model_(model), options_(options) {
    for (int j = 0; j < model.column_count(); ++j) {
      if (model.columns[j].integer) integer_columns_.push_back(j);
    }
    lower_.resize(model.column_count());
    upper_.resize(model.column_count());
    for (int j = 0; j < model.column_count(); ++j) {
      lower_[j] = model.columns[j].lower;
      upper_[j] = model.columns[j].upper;
    }
  }

  MilpSolution run() {
    Node root;
    root.id = next_id_++;
    for (int j : integer_columns_) {
      root.lower.push_back(std::ceil(model_.columns[j].lower - options_.integrality_tol));
      root.upper.push_back(std::floor(model_.columns[j].upper + options_.integrality_tol));
    }

    std::optional<Node> current = std::move(root);
    MilpStatus status = MilpStatus::kOptimalWithinGap;

    while (true) {
      if (!current) {
        if (open_.empty()) break;
        current = open_.top();
        open_.pop();
        if (has_incumbent() && relative_gap(incumbent_.objective, current->bound) <= options_.gap_target) {
          // Every open node is at least this good; the gap target is met.
          remember_pruned(current->bound);
          while (!open_.empty()) {
            remember_pruned(open_.top().bound);
            open_.pop();
          }
          current.reset();
          break;
        }
      }
      if (nodes_ >= options_.node_limit) {
        status = MilpStatus::kNodeLimit;
        open_.push(std::move(*current));
        current.reset();
        break;
      }
      current = process(std::move(*current));
    }

    MilpSolution out;
    out.nodes_explored = nodes_;
    out.has_incumbent = has_incumbent();
    if (out.has_incumbent) out.incumbent = incumbent_;
    double bound = pruned_min_;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> rest = open_;
    while (!rest.empty()) {
      bound = std::min(bound, rest.top().bound);
      rest.pop();
    }
    if (out.has_incumbent) bound = std::min(bound, incumbent_.objective);
    out.best_bound = bound;
    if (!out.has_incumbent) {
      out.status = status == MilpStatus::kNodeLimit ? MilpStatus::kNodeLimit : MilpStatus::kInfeasible;
      out.gap = kInfinity;
      return out;
    }
    out.gap = relative_gap(incumbent_.objective, out.best_bound);
    out.status = status == MilpStatus::kNodeLimit && out.gap > options_.gap_target
                     ? MilpStatus::kNodeLimit
                     : MilpStatus::kOptimalWithinGap;
    return out;
  }

 private:
  bool has_incumbent() const { return incumbent_.status == LpStatus::kOptimal; }

  void remember_pruned(double bound) { pruned_min_ = std::min(pruned_min_, bound); }

  bool prunable(double bound) const {
    return has_incumbent() && relative_gap(incumbent_.objective, bound) <= options_.gap_target;
  }

  // Solves one node; returns the child to plunge into, if any.
  std::optional<Node> process(Node node) {
    ++nodes_;
    for (std::size_t k = 0; k < integer_columns_.size(); ++k) {
      lower_[integer_columns_[k]] = node.lower[k];
      upper_[integer_columns_[k]] = node.upper[k];
    }
    auto lp = solve_lp(model_, lower_, upper_, options_.lp);
    if (lp.status == LpStatus::kUnbounded) {
      throw SolverError("LP relaxation is unbounded; MILP has no finite optimum");
    }
    if (lp.status == LpStatus::kInfeasible) {
      log_node(node.bound);
      return std::nullopt;
    }
    const double bound = std::max(node.bound, lp.objective);
    log_node(bound);
    if (prunable(bound)) {
      if (bound < incumbent_.objective) remember_pruned(bound);
      return std::nullopt;
    }

    int branch_k = -1;
    double best_frac = 0.0;
    for (std::size_t k = 0; k < integer_columns_.size(); ++k) {
      const double x = lp.values[integer_columns_[k]];
      const double frac = x - std::floor(x);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist <= options_.integrality_tol) continue;
      if (dist > best_frac + 1e-12) {
        best_frac = dist;
        branch_k = static_cast<int>(k);
      }
    }

    if (branch_k < 0) {
      offer_incumbent(std::move(lp));
      return std::nullopt;
    }

    const double x = lp.values[integer_columns_[branch_k]];
    Node down = node;
    down.id = next_id_++;
    down.bound = bound;
    down.upper[branch_k] = std::floor(x);
    Node up = std::move(node);
    up.id = next_id_++;
    up.bound = bound;
    up.lower[branch_k] = std::ceil(x);
    if (x - std::floor(x) >= 0.5) {
      open_.push(std::move(down));
      return up;
    }
    open_.push(std::move(up));
    return down;
  }

  void offer_incumbent(LpSolution lp) {
    auto rounded = lp.values;
    for (int j : integer_columns_) rounded[j] = std::round(rounded[j]);
    const auto* chosen = &rounded;
    if (!check_point(model_, rounded).ok(options_.feasibility_tol, options_.integrality_tol)) {
      if (!check_point(model_, lp.values).ok(options_.feasibility_tol, options_.integrality_tol)) {
        return;  // numerically doubtful point, never reported
      }
      chosen = &lp.values;
    }
    const double objective = objective_value(model_, *chosen);
    if (has_incumbent() && objective >= incumbent_.objective) return;
    incumbent_.status = LpStatus::kOptimal;
    incumbent_.values = *chosen;
    incumbent_.objective = objective;
    incumbent_.iterations = lp.iterations;
  }

  void log_node(double bound) const {
    if (!options_.log) return;
    *options_.log << "node " << nodes_ << " bound " << bound << " incumbent "
                  << (has_incumbent() ? incumbent_.objective : kInfinity) << " gap "
                  << (has_incumbent() ? relative_gap(incumbent_.objective, bound) : kInfinity) << '\n';
  }

  const Model& model_;
  const MilpOptions& options_;
  std::vector<int> integer_columns_;
  std::vector<double> lower_, upper_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  LpSolution incumbent_;
  double pruned_min_ = kInfinity;
  long nodes_ = 0;
  long next_id_ = 0;
};

}  // namespace

MilpSolution solve_milp(const Model& model, const MilpOptions& options) {
  if (!(options.gap_target > 0.0)) throw PreconditionError("gap_target must be positive");
  check_well_formed(model);
  if (model.row_count() > options.max_rows) {
    throw PreconditionError("model has " + std::to_string(model.row_count()) +
                            " rows, above the built-in solver limit of " +
                            std::to_string(options.max_rows) +
                            "; export it with export-mps and use an external MILP solver");
  }
  BranchAndBound search(model, options);
  return search.run();
}

}  // namespace h2tep::milp
