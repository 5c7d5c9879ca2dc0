#include "h2tep/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "h2tep/errors.hpp"

namespace h2tep {

double Profile::min() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double Profile::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double Profile::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

std::size_t NetworkCase::bus_index(int bus_id) const {
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].id == bus_id) return i;
  }
  throw ReferenceError("unknown bus id " + std::to_string(bus_id));
}

std::size_t NetworkCase::route_index(int route_id) const {
  for (std::size_t i = 0; i < hydrogen_routes.size(); ++i) {
    if (hydrogen_routes[i].id == route_id) return i;
  }
  throw ReferenceError("unknown hydrogen route id " + std::to_string(route_id));
}

double NetworkCase::demand(std::size_t bus_pos, int p, int d, int t) const {
  double total = 0.0;
  for (const auto& entry : load) {
    if (entry.bus == buses[bus_pos].id) total += entry.demand(p, d, t);
  }
  return total;
}

std::vector<Profile> NetworkCase::demand_by_bus() const {
  std::vector<Profile> out(buses.size(), Profile(horizon));
  for (const auto& entry : load) {
    auto& target = out[bus_index(entry.bus)];
    for (std::size_t i = 0; i < target.values().size(); ++i) {
      target.values()[i] += entry.demand.values()[i];
    }
  }
  return out;
}

namespace {

class Collector {
 public:
  void add(std::string entity, std::string rule) {
    out_.push_back({std::move(entity), std::move(rule)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

std::string label(const char* kind, int id) { return std::string(kind) + " " + std::to_string(id); }

template <typename T>
void check_unique_ids(const std::vector<T>& items, const char* kind, Collector& c) {
  std::set<int> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.id).second) c.add(label(kind, item.id), "duplicate id");
  }
}

void check_profile(const Profile& prof, const PlanningHorizon& h, const std::string& entity,
                   const char* what, Collector& c) {
  if (!prof.matches(h)) c.add(entity, std::string(what) + " shape does not match horizon");
}

}  // namespace

std::vector<Violation> validate(const NetworkCase& grid) {
  Collector c;
  const auto& h = grid.horizon;

  if (h.n_periods < 1) c.add("horizon", "n_periods must be >= 1");
  if (h.years_per_period < 1) c.add("horizon", "years_per_period must be >= 1");
  if (h.typical_days_per_year < 1) c.add("horizon", "typical_days_per_year must be >= 1");
  if (h.intervals_per_day < 1) c.add("horizon", "intervals_per_day must be >= 1");
  if (static_cast<int>(h.period_labels.size()) != h.n_periods) {
    c.add("horizon", "period_labels length must equal n_periods");
  }
  if (!h.day_labels.empty() && static_cast<int>(h.day_labels.size()) != h.typical_days_per_year) {
    c.add("horizon", "day_labels length must equal typical_days_per_year");
  }
  if (!(grid.mva_base > 0.0)) c.add("case", "mva_base must be positive");
  if (!(grid.angle_bound > 0.0)) c.add("case", "angle_bound must be positive");

  std::set<int> bus_ids;
  int slack_count = 0;
  for (const auto& bus : grid.buses) {
    if (!bus_ids.insert(bus.id).second) c.add(label("bus", bus.id), "duplicate id");
    if (bus.is_slack) ++slack_count;
  }
  if (slack_count != 1) c.add("buses", "exactly one slack bus required");
  auto known_bus = [&](int id) { return bus_ids.count(id) > 0; };

  check_unique_ids(grid.generators, "generator", c);
  check_unique_ids(grid.renewables, "renewable", c);
  check_unique_ids(grid.lines, "line", c);
  check_unique_ids(grid.candidate_lines, "candidate_line", c);
  check_unique_ids(grid.hydrogen_routes, "hydrogen_route", c);

  double max_cost = 0.0;
  for (const auto& g : grid.generators) {
    const auto who = label("generator", g.id);
    if (!known_bus(g.bus)) c.add(who, "unknown bus " + std::to_string(g.bus));
    if (g.kind == AssetKind::kExisting) {
      if (!(g.p_min >= 0.0 && g.p_min <= g.p_max)) c.add(who, "requires 0 <= p_min <= p_max");
    } else {
      if (static_cast<int>(g.per_period_limits.size()) != h.n_periods) {
        c.add(who, "per_period_limits length must equal n_periods");
      }
      for (const auto& [lo, hi] : g.per_period_limits) {
        if (!(lo >= 0.0 && lo <= hi)) c.add(who, "requires 0 <= p_min <= p_max in every period");
      }
    }
    if (g.energy_cost < 0.0) c.add(who, "energy_cost must be >= 0");
    if (g.retire_period && *g.retire_period < 1) c.add(who, "retire_period must be >= 1");
    max_cost = std::max(max_cost, g.energy_cost);
  }

  for (const auto& r : grid.renewables) {
    const auto who = label("renewable", r.id);
    if (!known_bus(r.bus)) c.add(who, "unknown bus " + std::to_string(r.bus));
    if (r.p_min < 0.0) c.add(who, "p_min must be >= 0");
    check_profile(r.availability, h, who, "availability", c);
    if (r.availability.matches(h) && r.availability.min() < r.p_min) {
      c.add(who, "availability below p_min");
    }
  }

  auto check_line = [&](const TransmissionLine& l, const std::string& who) {
    if (!known_bus(l.from_bus)) c.add(who, "unknown bus " + std::to_string(l.from_bus));
    if (!known_bus(l.to_bus)) c.add(who, "unknown bus " + std::to_string(l.to_bus));
    if (l.from_bus == l.to_bus) c.add(who, "from_bus equals to_bus");
    if (!(l.reactance > 0.0)) c.add(who, "reactance must be positive");
    check_profile(l.rating, h, who, "rating", c);
    if (l.rating.matches(h) && !(l.rating.min() > 0.0)) c.add(who, "rating must be positive");
  };
  for (const auto& l : grid.lines) check_line(l, label("line", l.id));
  for (const auto& l : grid.candidate_lines) {
    const auto who = label("candidate_line", l.id);
    check_line(l, who);
    if (l.capital_cost < 0.0) c.add(who, "capital_cost must be >= 0");
    if (!(l.maintenance_ratio >= 0.0 && l.maintenance_ratio < 1.0)) {
      c.add(who, "maintenance_ratio out of [0,1)");
    }
  }

  for (const auto& r : grid.hydrogen_routes) {
    const auto who = label("hydrogen_route", r.id);
    if (!known_bus(r.from_bus)) c.add(who, "unknown bus " + std::to_string(r.from_bus));
    if (!known_bus(r.to_bus)) c.add(who, "unknown bus " + std::to_string(r.to_bus));
    if (r.from_bus == r.to_bus) c.add(who, "from_bus equals to_bus");
    if (!(r.eta_e > 0.0 && r.eta_e <= 1.0)) c.add(who, "eta_e out of (0,1]");
    if (!(r.eta_f > 0.0 && r.eta_f <= 1.0)) c.add(who, "eta_f out of (0,1]");
    if (r.eta_c < 0.0) c.add(who, "eta_c must be >= 0");
    if (r.pipeline_capacity < 0.0 || r.electrolyzer_rating < 0.0 || r.fuelcell_rating < 0.0) {
      c.add(who, "capacities and ratings must be >= 0");
    }
    if (r.pipeline_cost < 0.0 || r.electrolyzer_cost < 0.0 || r.fuelcell_cost < 0.0) {
      c.add(who, "costs must be >= 0");
    }
    if (!(r.maintenance_ratio >= 0.0 && r.maintenance_ratio < 1.0)) {
      c.add(who, "maintenance_ratio out of [0,1)");
    }
  }

  for (const auto& entry : grid.load) {
    const auto who = label("load at bus", entry.bus);
    if (!known_bus(entry.bus)) c.add(who, "unknown bus " + std::to_string(entry.bus));
    check_profile(entry.demand, h, who, "demand", c);
    if (entry.demand.min() < 0.0) c.add(who, "demand must be >= 0");
  }

  // The penalty has to dominate the most expensive annualized per-unit hour.
  if (h.typical_days_per_year >= 1) {
    const double annualized =
        h.years_per_period * grid.mva_base * h.day_weight() * max_cost;
    if (!(grid.shed_penalty > annualized)) {
      c.add("case", "shed_penalty must exceed the largest annualized generation cost");
    }
  }
  return c.take();
}

void require_valid(const NetworkCase& grid) {
  const auto violations = validate(grid);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid case";
  for (const auto& v : violations) msg << "; " << v.to_string();
  throw PreconditionError(msg.str());
}

double weighted_load_energy(const NetworkCase& grid) {
  double total = 0.0;
  for (const auto& entry : grid.load) total += entry.demand.sum();
  return total * grid.horizon.day_weight();
}

double weighted_renewable_energy(const NetworkCase& grid) {
  double total = 0.0;
  for (const auto& r : grid.renewables) total += r.availability.sum();
  return total * grid.horizon.day_weight();
}

NetworkCase scale_renewable_penetration(const NetworkCase& grid, double target) {
  if (!(target >= 0.0)) throw PreconditionError("penetration target must be >= 0");
  const double available = weighted_renewable_energy(grid);
  NetworkCase out = grid;
  if (target == 0.0) {
    for (auto& r : out.renewables) std::fill(r.availability.values().begin(), r.availability.values().end(), 0.0);
    return out;
  }
  if (!(available > 0.0)) {
    throw PreconditionError("penetration target unachievable: no renewable energy available");
  }
  const double factor = target * weighted_load_energy(grid) / available;
  for (auto& r : out.renewables) {
    for (auto& v : r.availability.values()) v *= factor;
  }
  return out;
}

NetworkCase apply_hydrogen_cost_reduction(const NetworkCase& grid, double reduction) {
  if (!(reduction >= 0.0 && reduction < 1.0)) {
    throw PreconditionError("cost reduction must lie in [0,1)");
  }
  NetworkCase out = grid;
  const double keep = 1.0 - reduction;
  for (auto& r : out.hydrogen_routes) {
    r.pipeline_cost *= keep;
    r.electrolyzer_cost *= keep;
    r.fuelcell_cost *= keep;
  }
  return out;
}

}  // namespace h2tep
