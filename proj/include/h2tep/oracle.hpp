#pragma once

#include <cstdint>
#include <vector>

#include "h2tep/formulation.hpp"
#include "h2tep/operation.hpp"

namespace h2tep {

inline constexpr std::uint64_t kDefaultPlanCap = 4096;

// Every build schedule where each candidate (lines first, then routes) is
// built once in one of the periods or never. Plan i is decoded in mixed
// radix N^P + 1, last candidate fastest; digit 0 means never built.
class PlanEnumeration {
 public:
  // Throws PreconditionError when the count exceeds `cap`. TEP-T enumerates
  // candidate lines only.
  PlanEnumeration(const NetworkCase& grid, ModelKind kind = ModelKind::kTepH,
                  std::uint64_t cap = kDefaultPlanCap);

  std::uint64_t size() const { return total_; }
  InvestmentPlan at(std::uint64_t index) const;

 private:
  const NetworkCase* grid_;
  int candidates_ = 0;
  int lines_ = 0;
  std::uint64_t total_ = 1;
};

std::vector<InvestmentPlan> enumerate_plans(const NetworkCase& grid, ModelKind kind = ModelKind::kTepH,
                                            std::uint64_t cap = kDefaultPlanCap);

struct OracleResult {
  InvestmentPlan plan;
  CostBreakdown costs;
  std::uint64_t plans_evaluated = 0;
};

// Evaluates every plan with the operation LP and keeps the cheapest total;
// ties go to the earlier plan. `workers` = 0 uses the hardware concurrency.
OracleResult brute_force_optimum(const NetworkCase& grid, ModelKind kind = ModelKind::kTepH,
                                 std::uint64_t cap = kDefaultPlanCap, unsigned workers = 0);

}  // namespace h2tep
