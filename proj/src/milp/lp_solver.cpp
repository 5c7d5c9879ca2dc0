#include "h2tep/milp/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "h2tep/errors.hpp"

namespace h2tep::milp {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Primal simplex over the row-activity form
//
//   A x - s = 0,   lo_x <= x <= up_x,   row_lo <= s <= row_up,
//
// so every variable (structural x or logical s) is simply bounded and the
// all-logical basis B = -I is always available as a start. Phase 1 minimizes
// the sum of bound infeasibilities of the basic variables; phase 2 minimizes
// cost'x. The basis inverse is kept dense and updated in product form, with
// periodic refactorization.
class BoundedSimplex {
 public:
  BoundedSimplex(const Model& model, std::span<const double> lower,
                 std::span<const double> upper, const LpOptions& options)
      : options_(options),
        rows_(model.row_count()),
        structurals_(model.column_count()),
        total_(rows_ + structurals_) {
    entries_.resize(structurals_);
    for (int i = 0; i < rows_; ++i) {
      for (const auto& t : model.rows[i].terms) {
        if (t.value != 0.0) entries_[t.column].push_back({i, t.value});
      }
    }
    lower_.resize(total_);
    upper_.resize(total_);
    cost_.assign(total_, 0.0);
    double max_cost = 1.0;
    for (int j = 0; j < structurals_; ++j) {
      lower_[j] = lower[j];
      upper_[j] = upper[j];
      cost_[j] = model.columns[j].cost;
      max_cost = std::max(max_cost, std::abs(cost_[j]));
    }
    for (int i = 0; i < rows_; ++i) {
      lower_[structurals_ + i] = model.rows[i].lower();
      upper_[structurals_ + i] = model.rows[i].upper();
    }
    dual_tol_ = options_.optimality_tol * max_cost;
  }

  LpSolution run() {
    initialize();
    std::vector<double> basic_cost(rows_), duals(rows_), alpha(rows_);
    int since_refactor = 0;

    while (true) {
      if (iterations_ >= options_.max_iterations) {
        throw SolverError("simplex iteration limit reached (" + std::to_string(iterations_) + ")");
      }
      if (since_refactor >= options_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }

      const bool phase_one = price_basics(basic_cost);
      btran(basic_cost, duals);
      const auto entering = choose_entering(duals, phase_one);
      if (entering.var < 0) {
        if (since_refactor > 0) {
          // Confirm on a fresh factorization before declaring termination.
          refactor();
          since_refactor = 0;
          continue;
        }
        return finish(phase_one ? LpStatus::kInfeasible : LpStatus::kOptimal);
      }

      ftran(entering.var, alpha);
      const auto step = ratio_test(entering, alpha, phase_one);
      if (!step.bounded) {
        if (phase_one) throw SolverError("simplex phase 1 produced an unbounded ray");
        return finish(LpStatus::kUnbounded);
      }
      apply(entering, step, alpha);
      ++iterations_;
      ++since_refactor;

      if (step.theta <= 1e-12) {
        if (++degenerate_run_ > options_.stall_threshold) bland_ = true;
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }
    }
  }

 private:
  struct Entry {
    int row;
    double value;
  };
  struct Entering {
    int var = -1;
    int direction = 0;  // +1 increase, -1 decrease
  };
  struct Step {
    bool bounded = false;
    bool flip = false;
    double theta = 0.0;
    int position = -1;        // leaving basis position
    bool leave_upper = false;  // leaving variable ends at its upper bound
  };

  template <typename F>
  void for_column(int var, F&& f) const {
    if (var < structurals_) {
      for (const auto& e : entries_[var]) f(e.row, e.value);
    } else {
      f(var - structurals_, -1.0);
    }
  }

  double& binv(int i, int k) { return binv_[static_cast<std::size_t>(i) * rows_ + k]; }

  void initialize() {
    value_.assign(total_, 0.0);
    state_.assign(total_, VarState::kAtLower);
    for (int j = 0; j < structurals_; ++j) {
      if (std::isfinite(lower_[j])) {
        value_[j] = lower_[j];
        state_[j] = VarState::kAtLower;
      } else if (std::isfinite(upper_[j])) {
        value_[j] = upper_[j];
        state_[j] = VarState::kAtUpper;
      } else {
        value_[j] = 0.0;
        state_[j] = VarState::kFree;
      }
    }
    head_.resize(rows_);
    binv_.assign(static_cast<std::size_t>(rows_) * rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      head_[i] = structurals_ + i;
      state_[structurals_ + i] = VarState::kBasic;
      binv(i, i) = -1.0;
    }
    compute_basic_values();
  }

  // x_B = -B^{-1} N x_N
  void compute_basic_values() {
    std::vector<double> rhs(rows_, 0.0);
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || value_[j] == 0.0) continue;
      const double xj = value_[j];
      for_column(j, [&](int r, double a) { rhs[r] -= a * xj; });
    }
    for (int i = 0; i < rows_; ++i) {
      double v = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      for (int k = 0; k < rows_; ++k) v += row[k] * rhs[k];
      value_[head_[i]] = v;
    }
  }

  // Dense Gauss-Jordan inversion of the current basis.
  void refactor() {
    const std::size_t m = rows_;
    std::vector<double> work(m * m, 0.0);
    for (int i = 0; i < rows_; ++i) {
      for_column(head_[i], [&](int r, double a) { work[r * m + i] = a; });
    }
    std::vector<double> inv(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t pivot = c;
      double best = std::abs(work[c * m + c]);
      for (std::size_t r = c + 1; r < m; ++r) {
        if (std::abs(work[r * m + c]) > best) {
          best = std::abs(work[r * m + c]);
          pivot = r;
        }
      }
      if (best < 1e-12) throw SolverError("singular basis during refactorization");
      if (pivot != c) {
        std::swap_ranges(work.begin() + pivot * m, work.begin() + (pivot + 1) * m, work.begin() + c * m);
        std::swap_ranges(inv.begin() + pivot * m, inv.begin() + (pivot + 1) * m, inv.begin() + c * m);
      }
      const double scale = 1.0 / work[c * m + c];
      for (std::size_t k = 0; k < m; ++k) {
        work[c * m + k] *= scale;
        inv[c * m + k] *= scale;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = work[r * m + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m; ++k) {
          work[r * m + k] -= f * work[c * m + k];
          inv[r * m + k] -= f * inv[c * m + k];
        }
      }
    }
    binv_ = std::move(inv);
    compute_basic_values();
  }

  // Fills the basic cost vector; returns true while some basic variable is
  // outside its bounds (phase 1).
  bool price_basics(std::vector<double>& basic_cost) const {
    bool infeasible = false;
    for (int i = 0; i < rows_; ++i) {
      const int v = head_[i];
      if (value_[v] < lower_[v] - options_.feasibility_tol) {
        basic_cost[i] = -1.0;
        infeasible = true;
      } else if (value_[v] > upper_[v] + options_.feasibility_tol) {
        basic_cost[i] = 1.0;
        infeasible = true;
      } else {
        basic_cost[i] = 0.0;
      }
    }
    if (!infeasible) {
      for (int i = 0; i < rows_; ++i) basic_cost[i] = cost_[head_[i]];
    }
    return infeasible;
  }

  // y' = c_B' B^{-1}
  void btran(const std::vector<double>& basic_cost, std::vector<double>& duals) {
    std::fill(duals.begin(), duals.end(), 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double c = basic_cost[i];
      if (c == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      for (int k = 0; k < rows_; ++k) duals[k] += c * row[k];
    }
  }

  // alpha = B^{-1} a_var
  void ftran(int var, std::vector<double>& alpha) {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for_column(var, [&](int r, double a) {
      for (int i = 0; i < rows_; ++i) alpha[i] += binv(i, r) * a;
    });
  }

  Entering choose_entering(const std::vector<double>& duals, bool phase_one) const {
    Entering best;
    double best_score = 0.0;
    for (int j = 0; j < total_; ++j) {
      const auto s = state_[j];
      if (s == VarState::kBasic || lower_[j] == upper_[j]) continue;
      double d = phase_one ? 0.0 : cost_[j];
      for_column(j, [&](int r, double a) { d -= duals[r] * a; });
      const double tol = phase_one ? options_.optimality_tol : dual_tol_;
      int direction = 0;
      if (s == VarState::kAtLower && d < -tol) {
        direction = 1;
      } else if (s == VarState::kAtUpper && d > tol) {
        direction = -1;
      } else if (s == VarState::kFree && std::abs(d) > tol) {
        direction = d < 0.0 ? 1 : -1;
      }
      if (direction == 0) continue;
      if (bland_) return {j, direction};
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        best = {j, direction};
      }
    }
    return best;
  }

  // Bound a basic variable moves toward along the ray, or NaN if unbounded
  // in that direction.
  double target_bound(int var, double rate, bool phase_one) const {
    const double x = value_[var];
    const double tol = options_.feasibility_tol;
    if (rate < 0.0) {
      if (phase_one && x > upper_[var] + tol) return upper_[var];
      if (x >= lower_[var] - tol && std::isfinite(lower_[var])) return lower_[var];
    } else {
      if (phase_one && x < lower_[var] - tol) return lower_[var];
      if (x <= upper_[var] + tol && std::isfinite(upper_[var])) return upper_[var];
    }
    return std::nan("");
  }

  Step ratio_test(const Entering& in, const std::vector<double>& alpha, bool phase_one) const {
    Step step;
    const double span = upper_[in.var] - lower_[in.var];
    const double flip_limit = std::isfinite(span) ? span : kInfinity;
    const double tol = options_.feasibility_tol;

    // Pass 1: largest step keeping every basic within its (relaxed) bound.
    double limit = kInfinity;
    for (int i = 0; i < rows_; ++i) {
      if (std::abs(alpha[i]) < options_.pivot_tol) continue;
      const double rate = -in.direction * alpha[i];
      const int v = head_[i];
      const double target = target_bound(v, rate, phase_one);
      if (std::isnan(target)) continue;
      const double slack = std::abs(value_[v] - target);
      const double ratio = bland_ ? slack / std::abs(rate) : (slack + tol) / std::abs(rate);
      limit = std::min(limit, ratio);
    }

    // Pass 2: among blocking candidates within the limit, prefer the largest
    // pivot (Harris) or, under Bland's rule, the lowest variable index.
    double best_pivot = 0.0;
    int best_var = -1;
    for (int i = 0; i < rows_; ++i) {
      if (std::abs(alpha[i]) < options_.pivot_tol) continue;
      const double rate = -in.direction * alpha[i];
      const int v = head_[i];
      const double target = target_bound(v, rate, phase_one);
      if (std::isnan(target)) continue;
      const double ratio = std::abs(value_[v] - target) / std::abs(rate);
      if (ratio > limit + (bland_ ? 1e-12 : 0.0)) continue;
      const bool better = bland_ ? (best_var < 0 || v < best_var) : std::abs(alpha[i]) > best_pivot;
      if (better) {
        best_pivot = std::abs(alpha[i]);
        best_var = v;
        step.position = i;
        step.theta = ratio;
        step.leave_upper = target == upper_[v];
      }
    }

    if (step.position >= 0 && step.theta < flip_limit) {
      step.bounded = true;
      step.theta = std::max(step.theta, 0.0);
      return step;
    }
    if (std::isfinite(flip_limit)) {
      step.bounded = true;
      step.flip = true;
      step.position = -1;
      step.theta = flip_limit;
      return step;
    }
    step.bounded = false;
    return step;
  }

  void apply(const Entering& in, const Step& step, const std::vector<double>& alpha) {
    const double delta = in.direction * step.theta;
    if (delta != 0.0) {
      value_[in.var] += delta;
      for (int i = 0; i < rows_; ++i) value_[head_[i]] -= delta * alpha[i];
    }
    if (step.flip) {
      if (in.direction > 0) {
        value_[in.var] = upper_[in.var];
        state_[in.var] = VarState::kAtUpper;
      } else {
        value_[in.var] = lower_[in.var];
        state_[in.var] = VarState::kAtLower;
      }
      return;
    }

    const int r = step.position;
    const int leaving = head_[r];
    if (step.leave_upper) {
      value_[leaving] = upper_[leaving];
      state_[leaving] = lower_[leaving] == upper_[leaving] ? VarState::kAtLower : VarState::kAtUpper;
    } else {
      value_[leaving] = lower_[leaving];
      state_[leaving] = VarState::kAtLower;
    }
    head_[r] = in.var;
    state_[in.var] = VarState::kBasic;

    // Product-form update of the dense inverse around pivot alpha[r].
    double* pivot_row = &binv_[static_cast<std::size_t>(r) * rows_];
    const double inv_pivot = 1.0 / alpha[r];
    for (int k = 0; k < rows_; ++k) pivot_row[k] *= inv_pivot;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      double* row = &binv_[static_cast<std::size_t>(i) * rows_];
      for (int k = 0; k < rows_; ++k) row[k] -= f * pivot_row[k];
    }
  }

  LpSolution finish(LpStatus status) const {
    LpSolution out;
    out.status = status;
    out.iterations = iterations_;
    out.values.assign(value_.begin(), value_.begin() + structurals_);
    if (status == LpStatus::kOptimal) {
      // Clip sub-tolerance bound drift so callers see in-bound values.
      for (int j = 0; j < structurals_; ++j) {
        out.values[j] = std::clamp(out.values[j], lower_[j], upper_[j]);
      }
    }
    return out;
  }

  const LpOptions& options_;
  int rows_;
  int structurals_;
  int total_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<double> lower_, upper_, cost_, value_;
  std::vector<VarState> state_;
  std::vector<int> head_;
  std::vector<double> binv_;
  double dual_tol_ = 1e-9;
  int iterations_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace

LpSolution solve_lp(const Model& model, const LpOptions& options) {
  std::vector<double> lower(model.column_count()), upper(model.column_count());
  for (int j = 0; j < model.column_count(); ++j) {
    lower[j] = model.columns[j].lower;
    upper[j] = model.columns[j].upper;
  }
  return solve_lp(model, lower, upper, options);
}

LpSolution solve_lp(const Model& model, std::span<const double> lower,
                    std::span<const double> upper, const LpOptions& options) {
  check_well_formed(model);
  for (int j = 0; j < model.column_count(); ++j) {
    if (lower[j] > upper[j]) {
      LpSolution empty;
      empty.status = LpStatus::kInfeasible;
      return empty;
    }
  }
  BoundedSimplex simplex(model, lower, upper, options);
  auto solution = simplex.run();
  if (solution.status == LpStatus::kOptimal) {
    solution.objective = objective_value(model, solution.values);
  }
  return solution;
}

}  // namespace h2tep::milp
