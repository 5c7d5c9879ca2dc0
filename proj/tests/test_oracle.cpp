#include <gtest/gtest.h>

#include <random>
#include <set>

#include "case_factory.hpp"
#include "h2tep/errors.hpp"
#include "h2tep/oracle.hpp"

using namespace h2tep;
using test_support::bundled;

TEST(EnumeratePlans, Counts) {
  auto g = bundled("six_bus_sweep");
  auto bare = g;
  bare.candidate_lines.clear();
  bare.hydrogen_routes.clear();
  EXPECT_EQ(enumerate_plans(bare).size(), 1u);
  EXPECT_EQ(enumerate_plans(bare)[0], InvestmentPlan::none(bare));

  auto one = bare;
  one.candidate_lines.push_back(g.candidate_lines[0]);
  const auto three = enumerate_plans(one);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].line_build_period(0), std::nullopt);
  EXPECT_EQ(three[1].line_build_period(0), 1);
  EXPECT_EQ(three[2].line_build_period(0), 2);

  auto two = one;
  two.hydrogen_routes.push_back(g.hydrogen_routes[0]);
  EXPECT_EQ(enumerate_plans(two).size(), 9u);
  EXPECT_EQ(enumerate_plans(two, ModelKind::kTepT).size(), 3u);
  EXPECT_EQ(enumerate_plans(g).size(), 81u);
}

TEST(EnumeratePlans, DistinctAndConsistent) {
  const auto g = bundled("six_bus_sweep");
  const auto plans = enumerate_plans(g);
  std::set<std::vector<std::vector<int>>> seen;
  for (const auto& p : plans) {
    EXPECT_NO_THROW(check_plan(g, p));
    auto key = p.line_built;
    key.insert(key.end(), p.h_built.begin(), p.h_built.end());
    EXPECT_TRUE(seen.insert(key).second);
  }
  EXPECT_EQ(enumerate_plans(g), plans);
}

TEST(EnumeratePlans, CapExceeded) {
  const auto g = bundled("six_bus_sweep");
  EXPECT_THROW(PlanEnumeration(g, ModelKind::kTepH, 80), PreconditionError);
  EXPECT_NO_THROW(PlanEnumeration(g, ModelKind::kTepH, 81));
}

TEST(BruteForce, Fig2BuildsRouteWhenCheaperThanShedding) {
  const auto g = bundled("fig2_two_bus");
  const auto best = brute_force_optimum(g);
  EXPECT_EQ(best.plans_evaluated, 2u);
  EXPECT_EQ(best.plan.route_build_period(0), 1);
  // Hand comparison of the two plans:
  // never: the 10 p.u. renewable feeds the 9.5 p.u. line and 5 p.u. is shed;
  // build: 19.5 p.u. leaves bus 1, so the thermal unit adds 9.5 p.u. at 3.65 M$ each.
  const double gen = 9.5 * 3.65;
  const double route = 200.0 * (1.0 + 1 * 0.01 * 5) + 30.0 + 35.0;
  EXPECT_NEAR(best.costs.total, gen + route, 1e-6);
  EXPECT_LT(gen + route, 5.0 * g.shed_penalty);
}

TEST(BruteForce, Fig2ProhibitiveCapitalBuildsNothing) {
  auto g = bundled("fig2_two_bus");
  g.hydrogen_routes[0].pipeline_cost = 5.0 * g.shed_penalty;
  const auto best = brute_force_optimum(g);
  EXPECT_EQ(best.plan, InvestmentPlan::none(g));
  EXPECT_NEAR(best.costs.total, 5.0 * g.shed_penalty, 1e-6);
}

TEST(BruteForce, ZeroCandidatesEqualsEvaluation) {
  auto g = bundled("six_bus_sweep");
  g.candidate_lines.clear();
  g.hydrogen_routes.clear();
  const auto best = brute_force_optimum(g);
  EXPECT_EQ(best.plan, InvestmentPlan::none(g));
  EXPECT_NEAR(best.costs.total, evaluate_plan(g, best.plan).costs.total, 1e-9);
}

TEST(BruteForce, WorkerCountDoesNotChangeResult) {
  const auto g = bundled("six_bus_sweep");
  const auto serial = brute_force_optimum(g, ModelKind::kTepH, kDefaultPlanCap, 1);
  const auto parallel = brute_force_optimum(g, ModelKind::kTepH, kDefaultPlanCap, 4);
  EXPECT_EQ(serial.plan, parallel.plan);
  EXPECT_EQ(serial.costs.total, parallel.costs.total);
}

TEST(BruteForce, HydrogenOptionsOnlyHelp) {
  std::mt19937 rng(99);
  for (int i = 0; i < 10; ++i) {
    const auto g = test_support::random_case(rng);
    const double h = brute_force_optimum(g, ModelKind::kTepH).costs.total;
    const double t = brute_force_optimum(g, ModelKind::kTepT).costs.total;
    EXPECT_LE(h, t * (1.0 + 1e-9) + 1e-9);
  }
}
