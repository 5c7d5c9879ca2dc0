#include "h2tep/milp/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "h2tep/errors.hpp"

namespace h2tep::milp {

double Row::lower() const {
  switch (sense) {
    case Sense::kLessEqual:
      return -kInfinity;
    case Sense::kEqual:
    case Sense::kGreaterEqual:
    case Sense::kRanged:
      return rhs;
  }
  return rhs;
}

double Row::upper() const {
  switch (sense) {
    case Sense::kGreaterEqual:
      return kInfinity;
    case Sense::kEqual:
    case Sense::kLessEqual:
      return rhs;
    case Sense::kRanged:
      return rhs + range;
  }
  return rhs;
}

int Model::add_column(Column column) {
  columns.push_back(std::move(column));
  return static_cast<int>(columns.size()) - 1;
}

int Model::add_row(Row row) {
  rows.push_back(std::move(row));
  return static_cast<int>(rows.size()) - 1;
}

int Model::integer_count() const {
  return static_cast<int>(std::count_if(columns.begin(), columns.end(),
                                        [](const Column& c) { return c.integer; }));
}

std::optional<int> Model::find_column(const std::string& column_name) const {
  for (int j = 0; j < column_count(); ++j) {
    if (columns[j].name == column_name) return j;
  }
  return std::nullopt;
}

void check_well_formed(const Model& model) {
  std::unordered_set<std::string> names;
  for (const auto& c : model.columns) {
    if (!names.insert(c.name).second) throw PreconditionError("duplicate column name " + c.name);
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper) {
      throw PreconditionError("column " + c.name + " has crossed bounds");
    }
    if (!std::isfinite(c.cost)) throw PreconditionError("column " + c.name + " has non-finite cost");
  }
  names.clear();
  for (const auto& r : model.rows) {
    if (!names.insert(r.name).second) throw PreconditionError("duplicate row name " + r.name);
    if (!std::isfinite(r.rhs)) throw PreconditionError("row " + r.name + " has non-finite rhs");
    if (r.sense == Sense::kRanged && !(r.range >= 0.0)) {
      throw PreconditionError("row " + r.name + " has a negative range");
    }
    for (const auto& t : r.terms) {
      if (t.column < 0 || t.column >= model.column_count()) {
        throw PreconditionError("row " + r.name + " references a missing column");
      }
      if (!std::isfinite(t.value)) throw PreconditionError("row " + r.name + " has a non-finite coefficient");
    }
  }
}

double objective_value(const Model& model, std::span<const double> values) {
  double total = model.objective_offset;
  for (int j = 0; j < model.column_count(); ++j) total += model.columns[j].cost * values[j];
  return total;
}

double row_activity(const Row& row, std::span<const double> values) {
  double total = 0.0;
  for (const auto& t : row.terms) total += t.value * values[t.column];
  return total;
}

FeasibilityReport check_point(const Model& model, std::span<const double> values,
                              bool include_integrality) {
  FeasibilityReport report;
  for (int j = 0; j < model.column_count(); ++j) {
    const auto& c = model.columns[j];
    const double x = values[j];
    report.bound_violation = std::max({report.bound_violation, c.lower - x, x - c.upper});
    if (include_integrality && c.integer) {
      report.integrality_violation = std::max(report.integrality_violation, std::abs(x - std::round(x)));
    }
  }
  for (int i = 0; i < model.row_count(); ++i) {
    const auto& r = model.rows[i];
    const double a = row_activity(r, values);
    const double v = std::max(r.lower() - a, a - r.upper());
    if (v > report.row_violation) {
      report.row_violation = v;
      report.worst_row = i;
    }
  }
  return report;
}

}  // namespace h2tep::milp
