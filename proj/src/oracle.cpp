#include "h2tep/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "h2tep/errors.hpp"

namespace h2tep {

PlanEnumeration::PlanEnumeration(const NetworkCase& grid, ModelKind kind, std::uint64_t cap) : grid_(&grid) {
  lines_ = static_cast<int>(grid.candidate_lines.size());
  candidates_ = lines_ + (kind == ModelKind::kTepH ? static_cast<int>(grid.hydrogen_routes.size()) : 0);
  const std::uint64_t radix = static_cast<std::uint64_t>(grid.horizon.n_periods) + 1;
  for (int k = 0; k < candidates_; ++k) {
    if (total_ > cap / radix) {
      throw PreconditionError("plan enumeration exceeds the cap of " + std::to_string(cap) + " plans");
    }
    total_ *= radix;
  }
  if (total_ > cap) throw PreconditionError("plan enumeration exceeds the cap of " + std::to_string(cap) + " plans");
}

InvestmentPlan PlanEnumeration::at(std::uint64_t index) const {
  if (index >= total_) throw PreconditionError("plan index out of range");
  const std::uint64_t radix = static_cast<std::uint64_t>(grid_->horizon.n_periods) + 1;
  std::vector<std::optional<int>> lines(grid_->candidate_lines.size());
  std::vector<std::optional<int>> routes(grid_->hydrogen_routes.size());
  for (int k = candidates_ - 1; k >= 0; --k) {
    const int digit = static_cast<int>(index % radix);
    index /= radix;
    std::optional<int> period;
    if (digit > 0) period = digit;
    if (k < lines_) {
      lines[k] = period;
    } else {
      routes[k - lines_] = period;
    }
  }
  return InvestmentPlan::from_build_periods(*grid_, lines, routes);
}

std::vector<InvestmentPlan> enumerate_plans(const NetworkCase& grid, ModelKind kind, std::uint64_t cap) {
  PlanEnumeration plans(grid, kind, cap);
  std::vector<InvestmentPlan> out;
  out.reserve(plans.size());
  for (std::uint64_t i = 0; i < plans.size(); ++i) out.push_back(plans.at(i));
  return out;
}

OracleResult brute_force_optimum(const NetworkCase& grid, ModelKind kind, std::uint64_t cap, unsigned workers) {
  require_valid(grid);
  PlanEnumeration plans(grid, kind, cap);
  const std::uint64_t n = plans.size();
  std::vector<CostBreakdown> costs(n);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        costs[i] = evaluate_plan(grid, plans.at(i), kind).costs;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
        return;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (costs[i].total < costs[best].total) best = i;
  }
  return {plans.at(best), costs[best], n};
}

}  // namespace h2tep
