#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "h2tep/errors.hpp"
#include "h2tep/milp/branch_and_bound.hpp"
#include "h2tep/milp/mps.hpp"
#include "vertex_oracle.hpp"

#ifndef H2TEP_TEST_DATA_DIR
#error "H2TEP_TEST_DATA_DIR must be defined"
#endif

namespace h2tep::milp {
namespace {

const std::string kFixtures = std::string(H2TEP_TEST_DATA_DIR) + "/fixtures";

Model round_trip(const Model& m) {
  std::stringstream buf;
  write_mps(m, buf);
  return read_mps(buf);
}

TEST(Mps, SingleVariableHasOneColumnsEntry) {
  Model m;
  m.add_column({"x", 0.0, 5.0, -1.0, false});
  std::stringstream buf;
  write_mps(m, buf);
  const std::string text = buf.str();
  const auto columns = text.find("COLUMNS\n");
  const auto rhs = text.find("RHS\n");
  ASSERT_NE(columns, std::string::npos);
  const std::string body = text.substr(columns + 8, rhs - columns - 8);
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 1) << body;
}

TEST(Mps, RoundTripPreservesMixedIntegerModel) {
  Model m;
  m.name = "rt";
  m.objective_offset = 12.5;
  m.add_column({"pG[1,1,1,1]", 0.0, 3.0, 0.75, false});
  m.add_column({"theta[2,1,1,1]", -3.14, 3.14, 0.0, false});
  m.add_column({"uNL[1,1]", 0.0, 1.0, 40.0, true});
  m.add_column({"free", -kInfinity, kInfinity, 0.0, false});
  m.add_column({"fixed", 2.0, 2.0, 1.0, false});
  m.add_row({"bal", {{0, 1.0}, {1, -10.0}, {3, 1.0}}, Sense::kEqual, 1.5});
  m.add_row({"cap", {{0, 1.0}, {2, -3.0}}, Sense::kLessEqual, 0.0});
  m.add_row({"band", {{3, 1.0}, {4, 1.0}}, Sense::kRanged, -1.0, 4.0});
  m.add_row({"ge", {{0, 1.0}, {2, 1.0}}, Sense::kGreaterEqual, 0.5});

  const auto back = round_trip(m);
  ASSERT_EQ(back.column_count(), m.column_count());
  ASSERT_EQ(back.row_count(), m.row_count());
  EXPECT_EQ(back.objective_offset, m.objective_offset);
  for (int j = 0; j < m.column_count(); ++j) {
    EXPECT_EQ(back.columns[j].name, m.columns[j].name);
    EXPECT_EQ(back.columns[j].lower, m.columns[j].lower);
    EXPECT_EQ(back.columns[j].upper, m.columns[j].upper);
    EXPECT_EQ(back.columns[j].cost, m.columns[j].cost);
    EXPECT_EQ(back.columns[j].integer, m.columns[j].integer);
  }
  for (int i = 0; i < m.row_count(); ++i) {
    EXPECT_EQ(back.rows[i].sense, m.rows[i].sense);
    EXPECT_EQ(back.rows[i].lower(), m.rows[i].lower());
    EXPECT_EQ(back.rows[i].upper(), m.rows[i].upper());
  }
  MilpOptions tight;
  tight.gap_target = 1e-9;
  const auto a = solve_milp(m, tight);
  const auto b = solve_milp(back, tight);
  ASSERT_TRUE(a.has_incumbent && b.has_incumbent);
  EXPECT_NEAR(a.incumbent.objective, b.incumbent.objective, 1e-9);
}

TEST(Mps, ExternalFixtureSolvesToHandOptimum) {
  const auto m = import_mps(kFixtures + "/three_var.mps");
  ASSERT_EQ(m.column_count(), 3);
  ASSERT_EQ(m.row_count(), 3);
  EXPECT_EQ(m.columns[2].upper, 2.0);
  const auto sol = solve_lp(m);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, 2.0, 1e-9);
  EXPECT_NEAR(*test_support::vertex_enumeration_optimum(m), 2.0, 1e-9);
}

TEST(Mps, EmptyBoundsSectionGivesDefaultBounds) {
  std::istringstream in(
      "NAME t\nROWS\n N obj\n L c\nCOLUMNS\n    x obj 1 c 1\n    y c 1\nRHS\n    RHS c 3\nBOUNDS\nENDATA\n");
  const auto m = read_mps(in);
  for (const auto& c : m.columns) {
    EXPECT_EQ(c.lower, 0.0);
    EXPECT_EQ(c.upper, kInfinity);
  }
}

TEST(Mps, MalformedSectionOrderIsParseErrorWithLine) {
  std::istringstream in("NAME t\nCOLUMNS\n    x obj 1\nROWS\n N obj\nENDATA\n");
  try {
    read_mps(in, "bad.mps");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.mps:2"), std::string::npos) << e.what();
  }
}

TEST(Mps, UnknownRowAndBadNumberAreParseErrors) {
  std::istringstream unknown("ROWS\n N obj\nCOLUMNS\n    x nope 1\nENDATA\n");
  EXPECT_THROW(read_mps(unknown), ParseError);
  std::istringstream number("ROWS\n N obj\nCOLUMNS\n    x obj 1.2.3\nENDATA\n");
  EXPECT_THROW(read_mps(number), ParseError);
  std::istringstream truncated("ROWS\n N obj\nCOLUMNS\n    x obj 1\n");
  EXPECT_THROW(read_mps(truncated), ParseError);
}

TEST(Mps, RejectsNamesWithBlanks) {
  Model m;
  m.add_column({"bad name", 0.0, 1.0, 1.0, false});
  std::stringstream buf;
  EXPECT_THROW(write_mps(m, buf), PreconditionError);
}

}  // namespace
}  // namespace h2tep::milp
