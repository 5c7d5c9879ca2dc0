#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "case_factory.hpp"
#include "h2tep/errors.hpp"
#include "h2tep/scenario.hpp"

using namespace h2tep;
using test_support::bundled;

namespace {

std::vector<std::string> lines_of(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("h2tep_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(RoundTrip, ProportionalSplit) {
  const auto g = bundled("six_bus_sweep");
  const auto out = apply_round_trip(g, 0.8);
  for (std::size_t k = 0; k < g.hydrogen_routes.size(); ++k) {
    const auto& a = g.hydrogen_routes[k];
    const auto& b = out.hydrogen_routes[k];
    EXPECT_NEAR(b.eta_e * b.eta_f, 0.8, 1e-12);
    EXPECT_NEAR(b.eta_e / b.eta_f, a.eta_e / a.eta_f, 1e-12);
    EXPECT_NEAR(b.eta_e, a.eta_e * std::sqrt(0.8 / a.round_trip()), 1e-12);
  }
  auto fig2 = bundled("fig2_two_bus");  // 0.625 x 0.8
  EXPECT_THROW(apply_round_trip(fig2, 0.95), PreconditionError);
  EXPECT_THROW(apply_round_trip(fig2, 0.0), PreconditionError);
}

TEST(SweepPoints, LexicographicOrder) {
  const auto pts = sweep_points({{0.2, 0.8}, {0.4, 0.6}, {}});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(*pts[0].penetration, 0.2);
  EXPECT_EQ(*pts[0].round_trip, 0.4);
  EXPECT_EQ(*pts[1].penetration, 0.2);
  EXPECT_EQ(*pts[1].round_trip, 0.6);
  EXPECT_EQ(*pts[2].penetration, 0.8);
  EXPECT_EQ(*pts[3].round_trip, 0.6);
  EXPECT_FALSE(pts[0].cost_reduction.has_value());
  EXPECT_EQ(sweep_points({}).size(), 1u);
}

TEST(RunSweep, BasePointMatchesDirectSolve) {
  const auto g = bundled("six_bus_sweep");
  const milp::MilpOptions opt;
  const auto rows = run_sweep(g, {}, ModelKind::kTepH, opt);
  ASSERT_EQ(rows.size(), 1u);
  const auto direct = solve_planning(g, ModelKind::kTepH, opt);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_EQ(rows[0].total, direct.result.costs.total);
  EXPECT_EQ(rows[0].pipelines_built, direct.result.plan.routes_built());
  EXPECT_NEAR(rows[0].total,
              rows[0].generation_cost + rows[0].line_investment + rows[0].hydrogen_investment + rows[0].shed_penalty,
              1e-6 * rows[0].total);
}

TEST(RunSweep, DeterministicAcrossWorkerCounts) {
  const auto g = bundled("six_bus_sweep");
  const SweepAxis axes{{0.2, 0.8}, {0.4, 0.8}, {}};
  const auto a = run_sweep(g, axes, ModelKind::kTepH, {}, 1);
  const auto b = run_sweep(g, axes, ModelKind::kTepH, {}, 3);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].total, b[i].total);
    EXPECT_EQ(a[i].pipelines_built, b[i].pipelines_built);
    EXPECT_EQ(a[i].construction_periods, b[i].construction_periods);
  }
}

TEST(RunSweep, FailedPointDoesNotStopSweep) {
  const auto g = bundled("fig2_two_bus");  // eta_e 0.625, eta_f 0.8
  const auto rows = run_sweep(g, {{}, {0.5, 0.99}, {}}, ModelKind::kTepH, {});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_EQ(rows[0].pipelines_built, 1);
  EXPECT_EQ(rows[1].status, "failed");
  EXPECT_FALSE(rows[1].error.empty());

  const auto dir = scratch("failed_rows");
  const auto files = emit_tables(rows, "tep_h_round_trip-0.5-0.99", dir);
  const auto csv = lines_of(files[0]);
  ASSERT_EQ(csv.size(), 3u);
  EXPECT_NE(csv[2].find(",failed,"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(EmitTables, HeaderAndOneRow) {
  ScenarioRow row;
  row.point.round_trip = 0.4;
  row.pipelines_built = 1;
  row.construction_periods = {"2026-2030"};
  row.total = 12.5;
  const auto dir = scratch("one_row");
  const auto files = emit_tables({row}, "tep_h_round_trip-0.4", dir);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "tep_h_round_trip-0.4.csv");
  const auto csv = lines_of(files[0]);
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0].rfind("penetration,round_trip,cost_reduction,status,pipelines_built", 0), 0u);
  EXPECT_EQ(csv[1].rfind("base,0.4,base,ok,1,0,2026-2030,", 0), 0u);
  std::ifstream js(files[1]);
  const auto doc = nlohmann::json::parse(js);
  EXPECT_EQ(doc.size(), 1u);
  EXPECT_EQ(doc[0]["total"], 12.5);
  EXPECT_THROW(emit_tables({}, "x", dir), PreconditionError);
  std::filesystem::remove_all(dir);
}

TEST(EmitTables, StemNaming) {
  EXPECT_EQ(table_stem(ModelKind::kTepH, {{0.2, 0.8}, {0.4}, {}}), "tep_h_penetration-0.2-0.8_round_trip-0.4");
  EXPECT_EQ(table_stem(ModelKind::kTepT, {}), "tep_t_base");
}

TEST(EmitTimeseries, Fig2PeakHour) {
  const auto g = bundled("fig2_two_bus");
  const auto outcome = solve_planning(g, ModelKind::kTepH, {});
  const auto dir = scratch("timeseries");
  const auto files = emit_timeseries(outcome.result, g, {1}, dir);
  ASSERT_EQ(files.size(), 1u);
  const auto csv = lines_of(files[0]);
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0], "hour,h_1_MWh,pE_1_MW,pF_1_MW,pC_1_MW");
  double hour, h, pe, pf, pc;
  ASSERT_EQ(std::sscanf(csv[1].c_str(), "%lf,%lf,%lf,%lf,%lf", &hour, &h, &pe, &pf, &pc), 5);
  EXPECT_NEAR(pe, 1000.0, 1e-4);
  EXPECT_NEAR(pf, 500.0, 1e-4);
  EXPECT_NEAR(pf, 0.625 * 0.8 * pe, 1e-6);
  EXPECT_THROW(emit_timeseries(outcome.result, g, {7}, dir), ReferenceError);
  std::filesystem::remove_all(dir);
}

TEST(EmitTimeseries, OfflineRouteIsZero) {
  const auto g = bundled("six_bus_sweep");
  const auto r = evaluate_plan(g, InvestmentPlan::none(g));
  const auto dir = scratch("offline");
  const auto files = emit_timeseries(r, g, {}, dir);
  ASSERT_EQ(files.size(), 2u);  // two periods, one day
  const auto csv = lines_of(files[1]);
  ASSERT_EQ(csv.size(), 7u);
  for (std::size_t i = 1; i < csv.size(); ++i) {
    EXPECT_EQ(csv[i], std::to_string(i) + ",0,0,0,0,0,0,0,0");
  }
  std::filesystem::remove_all(dir);
}
