#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace h2tep::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kLessEqual, kEqual, kGreaterEqual, kRanged };

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
};

struct Term {
  int column = 0;
  double value = 0.0;
};

// sum(terms) <sense> rhs. A ranged row constrains the activity to
// [rhs, rhs + range] with range >= 0.
struct Row {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  double range = 0.0;

  double lower() const;
  double upper() const;
};

// Minimization model: min cost'x + objective_offset subject to rows and
// column bounds; integrality applies to columns flagged `integer`.
struct Model {
  std::string name = "MODEL";
  std::vector<Column> columns;
  std::vector<Row> rows;
  double objective_offset = 0.0;

  int add_column(Column column);
  int add_row(Row row);

  int column_count() const { return static_cast<int>(columns.size()); }
  int row_count() const { return static_cast<int>(rows.size()); }
  int integer_count() const;
  std::optional<int> find_column(const std::string& name) const;
};

// Throws PreconditionError when a term references a missing column, a name
// repeats, bounds cross, or a ranged row has a negative range.
void check_well_formed(const Model& model);

double objective_value(const Model& model, std::span<const double> values);
double row_activity(const Row& row, std::span<const double> values);

// Worst absolute violations of a candidate point, computed directly from the
// model data (no solver state involved).
struct FeasibilityReport {
  double bound_violation = 0.0;
  double row_violation = 0.0;
  double integrality_violation = 0.0;
  int worst_row = -1;

  bool ok(double feasibility_tol, double integrality_tol) const {
    return bound_violation <= feasibility_tol && row_violation <= feasibility_tol &&
           integrality_violation <= integrality_tol;
  }
};

FeasibilityReport check_point(const Model& model, std::span<const double> values,
                              bool include_integrality = true);

}  // namespace h2tep::milp
