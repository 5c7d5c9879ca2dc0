#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "case_factory.hpp"
#include "h2tep/errors.hpp"
#include "h2tep/operation.hpp"
#include "h2tep/oracle.hpp"

using namespace h2tep;
using test_support::bundled;

namespace {

InvestmentPlan route_online(const NetworkCase& g) {
  std::vector<std::optional<int>> lines(g.candidate_lines.size());
  std::vector<std::optional<int>> routes(g.hydrogen_routes.size(), 1);
  return InvestmentPlan::from_build_periods(g, lines, routes);
}

}  // namespace

TEST(EvaluatePlan, Fig2RouteOnline) {
  const auto g = bundled("fig2_two_bus");
  const auto r = evaluate_plan(g, route_online(g));
  const auto& s = r.hydrogen[0];
  EXPECT_NEAR(s.electrolyzer(0, 0, 0), 10.0, 1e-9);
  EXPECT_NEAR(s.fuel_cell(0, 0, 0), 5.0, 1e-9);
  EXPECT_NEAR(s.flow(0, 0, 0), 625.0, 1e-7);
  EXPECT_NEAR(s.compressor(0, 0, 0), 0.0, 1e-12);
  EXPECT_NEAR(r.total_shed(), 0.0, 1e-9);
  EXPECT_NEAR(r.flows[0](0, 0, 0), 9.5, 1e-9);
}

TEST(EvaluatePlan, Fig2RouteOfflineSheds) {
  const auto g = bundled("fig2_two_bus");
  const auto r = evaluate_plan(g, InvestmentPlan::none(g));
  // Only the 9.5 p.u. line reaches the 14.5 p.u. load.
  EXPECT_NEAR(r.shed[g.bus_index(2)](0, 0, 0), 5.0, 1e-9);
  EXPECT_NEAR(r.shed[g.bus_index(1)](0, 0, 0), 0.0, 1e-12);
  EXPECT_EQ(r.hydrogen[0].electrolyzer(0, 0, 0), 0.0);
  EXPECT_EQ(r.hydrogen[0].fuel_cell(0, 0, 0), 0.0);
  EXPECT_EQ(r.hydrogen[0].flow(0, 0, 0), 0.0);
  EXPECT_NEAR(r.costs.shed_penalty_value, 5.0 * g.shed_penalty, 1e-6);
}

TEST(EvaluatePlan, Fig3GasAtMinimum) {
  const auto g = bundled("fig3_low_demand");
  const auto r = evaluate_plan(g, route_online(g));
  const double p_min = g.generators[0].p_min;
  for (int t = 0; t < g.horizon.intervals_per_day; ++t) EXPECT_NEAR(r.dispatch[0](0, 0, t), p_min, 1e-9);
  // Hour 1: load 10 p.u. exceeds gas 4 + line 4; the fuel cell covers 2 p.u.
  EXPECT_NEAR(r.hydrogen[0].fuel_cell(0, 0, 0), 2.0, 1e-9);
  EXPECT_NEAR(r.hydrogen[0].electrolyzer(0, 0, 0), 4.0, 1e-9);
  EXPECT_GT(r.hydrogen[0].compressor(0, 0, 0), 0.0);
  EXPECT_NEAR(r.total_shed(), 0.0, 1e-9);
  EXPECT_TRUE(hydrogen_chain_check(r, g).empty());
}

TEST(EvaluatePlan, ZeroLoadsCostNothing) {
  auto g = bundled("six_bus_sweep");
  for (auto& l : g.load) {
    for (auto& v : l.demand.values()) v = 0.0;
  }
  const auto r = evaluate_plan(g, InvestmentPlan::none(g));
  EXPECT_NEAR(r.costs.total, 0.0, 1e-9);
  for (const auto& d : r.dispatch) EXPECT_NEAR(d.max(), 0.0, 1e-9);
}

TEST(EvaluatePlan, InconsistentPlanRejected) {
  const auto g = bundled("fig2_two_bus");
  auto plan = InvestmentPlan::none(g);
  plan.h_online[0][0] = 1;
  EXPECT_THROW(evaluate_plan(g, plan), PreconditionError);
}

TEST(BalanceResiduals, Fig2SolverOutput) {
  const auto g = bundled("fig2_two_bus");
  EXPECT_LE(max_abs(balance_residuals(evaluate_plan(g, route_online(g)), g)), 1e-6);
}

TEST(BalanceResiduals, PerturbedDispatch) {
  const auto g = bundled("six_bus_sweep");
  auto r = evaluate_plan(g, InvestmentPlan::none(g));
  r.dispatch[1](1, 0, 3) += 0.1;
  const auto res = balance_residuals(r, g);
  const auto at = g.bus_index(g.generators[1].bus);
  EXPECT_NEAR(res[at](1, 0, 3), 0.1, 1e-6);
  EXPECT_NEAR(max_abs(res), 0.1, 1e-6);
}

TEST(BalanceResiduals, RandomPlansOnRandomCases) {
  std::mt19937 rng(2024);
  int checked = 0;
  while (checked < 20) {
    const auto g = test_support::random_case(rng);
    const auto plans = enumerate_plans(g);
    const auto& plan = plans[std::uniform_int_distribution<std::size_t>(0, plans.size() - 1)(rng)];
    const auto r = evaluate_plan(g, plan);
    EXPECT_LE(max_abs(balance_residuals(r, g)), 1e-6);
    EXPECT_TRUE(hydrogen_chain_check(r, g).empty());
    EXPECT_TRUE(plan_usage_check(r, g).empty());
    ++checked;
  }
}

TEST(EnergyAccounting, GenerationMinusLossesEqualsServedLoad) {
  const auto g = bundled("six_bus_sweep");
  const auto plan = InvestmentPlan::from_build_periods(g, {1, 1}, {1, 1});
  const auto r = evaluate_plan(g, plan);
  const auto& h = g.horizon;
  for (int p = 0; p < h.n_periods; ++p) {
    for (int t = 0; t < h.intervals_per_day; ++t) {
      double supply = 0.0, served = 0.0;
      for (const auto& d : r.dispatch) supply += d(p, 0, t);
      for (std::size_t k = 0; k < r.renewable_out.size(); ++k) {
        supply += r.renewable_out[k](p, 0, t) - r.curtailment[k](p, 0, t);
      }
      for (const auto& s : r.hydrogen) {
        supply -= s.electrolyzer(p, 0, t) + s.compressor(p, 0, t) - s.fuel_cell(p, 0, t);
      }
      for (std::size_t n = 0; n < g.buses.size(); ++n) served += g.demand(n, p, 0, t) - r.shed[n](p, 0, t);
      EXPECT_NEAR(supply, served, 1e-6);
    }
  }
}

TEST(ChainCheck, Substitution) {
  auto g = bundled("fig2_two_bus");
  g.hydrogen_routes[0].eta_e = 0.6;
  g.hydrogen_routes[0].eta_f = 0.8;
  g.hydrogen_routes[0].eta_c = 0.0;
  auto r = evaluate_plan(g, route_online(g));
  auto& s = r.hydrogen[0];
  s.electrolyzer(0, 0, 0) = 0.5;
  s.flow(0, 0, 0) = 30.0;  // 0.6 * 0.5 p.u. * 100 MVA
  s.fuel_cell(0, 0, 0) = 0.24;
  s.compressor(0, 0, 0) = 0.0;
  EXPECT_TRUE(hydrogen_chain_check(r, g).empty());
  EXPECT_NEAR(s.fuel_cell(0, 0, 0) * 100.0 / (s.electrolyzer(0, 0, 0) * 100.0), 0.48, 1e-12);
  s.flow(0, 0, 0) = 31.0;
  const auto v = hydrogen_chain_check(r, g);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].check, "electrolyzer");
  EXPECT_NEAR(v[0].magnitude, 1.0, 1e-9);
  EXPECT_EQ(v[1].check, "fuel_cell");
  EXPECT_NEAR(v[1].magnitude, 0.8, 1e-9);
}

TEST(ChainCheck, OfflineCapacityIsZero) {
  const auto g = bundled("fig2_two_bus");
  auto r = evaluate_plan(g, InvestmentPlan::none(g));
  EXPECT_TRUE(hydrogen_chain_check(r, g).empty());
  EXPECT_TRUE(plan_usage_check(r, g).empty());
  r.hydrogen[0].fuel_cell(0, 0, 0) = 0.01;
  bool cap = false;
  for (const auto& v : hydrogen_chain_check(r, g)) cap = cap || v.check == "fuel_cell_cap";
  EXPECT_TRUE(cap);
  EXPECT_FALSE(plan_usage_check(r, g).empty());
}

TEST(PlanMonotonicity, AddingAnOnlineCandidateNeverHurts) {
  const auto g = bundled("six_bus_sweep");
  const auto plans = enumerate_plans(g);
  std::vector<double> op(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) op[i] = evaluate_plan(g, plans[i]).operation_cost();
  auto covers = [](const InvestmentPlan& a, const InvestmentPlan& b) {
    // a has everything b has online, in every period.
    for (std::size_t k = 0; k < a.line_online.size(); ++k) {
      for (std::size_t p = 0; p < a.line_online[k].size(); ++p) {
        if (b.line_online[k][p] > a.line_online[k][p]) return false;
      }
    }
    for (std::size_t k = 0; k < a.h_online.size(); ++k) {
      for (std::size_t p = 0; p < a.h_online[k].size(); ++p) {
        if (b.h_online[k][p] > a.h_online[k][p]) return false;
      }
    }
    return true;
  };
  int pairs = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    for (std::size_t j = 0; j < plans.size(); ++j) {
      if (i == j || !covers(plans[i], plans[j])) continue;
      EXPECT_LE(op[i], op[j] + 1e-7 * std::max(1.0, std::abs(op[j])));
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 100);
}

TEST(Serialization, JsonAndCsv) {
  const auto g = bundled("fig2_two_bus");
  const auto r = evaluate_plan(g, route_online(g));
  const auto doc = result_to_json(r, g);
  EXPECT_EQ(doc["model"], "tep_h");
  EXPECT_NEAR(doc["hydrogen"][0]["pE"][0][0][0].get<double>(), 10.0, 1e-9);
  EXPECT_NEAR(doc["costs"]["total"].get<double>(), r.costs.total, 1e-12);
  const auto path = std::filesystem::temp_directory_path() / "h2tep_operation_test.csv";
  write_result_csv(r, g, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "quantity,entity,period,day,hour,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  // gen, ren out, curtailment, line, 2 angles, 2 shed, 4 hydrogen values.
  EXPECT_EQ(rows, 12);
  std::filesystem::remove(path);
}
