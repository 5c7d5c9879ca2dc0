#pragma once

// Test-only LP oracle: exhaustive enumeration of basic solutions of a model
// whose columns all have finite bounds. Independent of the simplex code.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "h2tep/milp/model.hpp"

namespace h2tep::test_support {

inline milp::Model random_dense_lp(std::mt19937& rng, int n, int m) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  milp::Model model;
  std::vector<double> interior(n);
  for (int j = 0; j < n; ++j) {
    const double ub = 1.0 + 4.0 * pos(rng);
    model.add_column({"x" + std::to_string(j), 0.0, ub, unit(rng), false});
    interior[j] = ub * pos(rng);
  }
  for (int i = 0; i < m; ++i) {
    milp::Row row;
    row.name = "r" + std::to_string(i);
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = unit(rng);
      row.terms.push_back({j, a});
      activity += a * interior[j];
    }
    if (pos(rng) < 0.5) {
      row.sense = milp::Sense::kLessEqual;
      row.rhs = activity + pos(rng);
    } else {
      row.sense = milp::Sense::kGreaterEqual;
      row.rhs = activity - pos(rng);
    }
    model.add_row(std::move(row));
  }
  return model;
}

namespace detail {

// Solves the k x k system in place; false when (near) singular.
inline bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                        std::vector<double>& x) {
  const std::size_t k = b.size();
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (std::abs(a[p][c]) < 1e-10) return false;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t q = c; q < k; ++q) a[r][q] -= f * a[c][q];
      b[r] -= f * b[c];
    }
  }
  x.resize(k);
  for (std::size_t r = 0; r < k; ++r) x[r] = b[r] / a[r][r];
  return true;
}

}  // namespace detail

// Minimum objective over all vertices, or nullopt if none is feasible.
// Assumes the optimum is attained (bounded LP).
inline std::optional<double> vertex_enumeration_optimum(const milp::Model& model) {
  const int n = model.column_count();
  const int m = model.row_count();
  std::vector<std::vector<double>> dense(m, std::vector<double>(n, 0.0));
  for (int i = 0; i < m; ++i) {
    for (const auto& t : model.rows[i].terms) dense[i][t.column] += t.value;
  }

  std::optional<double> best;
  // Active rows: each row is inactive, or active at its lower or upper side.
  std::vector<int> row_choice(m, 0);  // 0 inactive, 1 lower, 2 upper
  std::vector<int> active;
  std::vector<double> active_rhs;

  auto evaluate_point = [&](const std::vector<double>& x) {
    auto report = milp::check_point(model, x, false);
    if (report.bound_violation > 1e-9 || report.row_violation > 1e-9) return;
    const double obj = milp::objective_value(model, x);
    if (!best || obj < *best) best = obj;
  };

  auto enumerate_columns = [&]() {
    const int k = static_cast<int>(active.size());
    if (k > n) return;
    std::vector<int> free_mask(n, 0);
    std::fill(free_mask.end() - k, free_mask.end(), 1);
    do {
      std::vector<int> free_cols, fixed_cols;
      for (int j = 0; j < n; ++j) (free_mask[j] ? free_cols : fixed_cols).push_back(j);
      const int fixed = static_cast<int>(fixed_cols.size());
      for (long bits = 0; bits < (1L << fixed); ++bits) {
        std::vector<double> x(n, 0.0);
        bool finite = true;
        for (int f = 0; f < fixed; ++f) {
          const auto& c = model.columns[fixed_cols[f]];
          x[fixed_cols[f]] = (bits >> f) & 1 ? c.upper : c.lower;
          finite = finite && std::isfinite(x[fixed_cols[f]]);
        }
        if (!finite) continue;
        if (k > 0) {
          std::vector<std::vector<double>> a(k, std::vector<double>(k));
          std::vector<double> b(k), sol;
          for (int r = 0; r < k; ++r) {
            b[r] = active_rhs[r];
            for (int f = 0; f < fixed; ++f) b[r] -= dense[active[r]][fixed_cols[f]] * x[fixed_cols[f]];
            for (int q = 0; q < k; ++q) a[r][q] = dense[active[r]][free_cols[q]];
          }
          if (!detail::solve_dense(a, b, sol)) continue;
          for (int q = 0; q < k; ++q) x[free_cols[q]] = sol[q];
        }
        evaluate_point(x);
      }
    } while (std::next_permutation(free_mask.begin(), free_mask.end()));
  };

  // Odometer over row choices.
  while (true) {
    active.clear();
    active_rhs.clear();
    bool valid = true;
    for (int i = 0; i < m; ++i) {
      const auto& row = model.rows[i];
      if (row.sense == milp::Sense::kEqual && row_choice[i] == 0) valid = false;
      if (row_choice[i] == 1) {
        if (!std::isfinite(row.lower())) valid = false;
        active.push_back(i);
        active_rhs.push_back(row.lower());
      } else if (row_choice[i] == 2) {
        if (!std::isfinite(row.upper()) || row.lower() == row.upper()) valid = false;
        active.push_back(i);
        active_rhs.push_back(row.upper());
      }
    }
    if (valid) enumerate_columns();
    int i = 0;
    while (i < m && ++row_choice[i] == 3) row_choice[i++] = 0;
    if (i == m) break;
  }
  return best;
}

}  // namespace h2tep::test_support
