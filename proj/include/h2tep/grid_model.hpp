#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace h2tep {

// Number of calendar days in a year used to weight typical days.
inline constexpr double kDaysPerYear = 365.0;

struct PlanningHorizon {
  int n_periods = 1;              // N^P
  int years_per_period = 1;       // N^Y
  int typical_days_per_year = 1;  // N^D
  int intervals_per_day = 24;     // |T|
  std::vector<std::string> period_labels;
  std::vector<std::string> day_labels;

  // Calendar days represented by one typical day (365 / N^D).
  double day_weight() const { return kDaysPerYear / typical_days_per_year; }
  std::size_t slot_count() const {
    return static_cast<std::size_t>(n_periods) * typical_days_per_year * intervals_per_day;
  }
};

// Dense (period, day, hour) tensor. Index order matches the case file
// nesting [period][day][hour].
class Profile {
 public:
  Profile() = default;
  Profile(int periods, int days, int hours, double fill = 0.0)
      : periods_(periods), days_(days), hours_(hours),
        values_(static_cast<std::size_t>(periods) * days * hours, fill) {}
  explicit Profile(const PlanningHorizon& h, double fill = 0.0)
      : Profile(h.n_periods, h.typical_days_per_year, h.intervals_per_day, fill) {}

  int periods() const { return periods_; }
  int days() const { return days_; }
  int hours() const { return hours_; }
  bool matches(const PlanningHorizon& h) const {
    return periods_ == h.n_periods && days_ == h.typical_days_per_year &&
           hours_ == h.intervals_per_day;
  }

  double& operator()(int p, int d, int t) { return values_[offset(p, d, t)]; }
  double operator()(int p, int d, int t) const { return values_[offset(p, d, t)]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double min() const;
  double max() const;
  double sum() const;

  bool operator==(const Profile&) const = default;

 private:
  std::size_t offset(int p, int d, int t) const {
    return (static_cast<std::size_t>(p) * days_ + d) * hours_ + t;
  }

  int periods_ = 0;
  int days_ = 0;
  int hours_ = 0;
  std::vector<double> values_;
};

enum class AssetKind { kExisting, kNew };

struct Bus {
  int id = 0;
  std::string name;
  bool is_slack = false;

  bool operator==(const Bus&) const = default;
};

// Powers are per-unit on the case MVA base; energy_cost is M$ per MWh.
struct ThermalGenerator {
  int id = 0;
  int bus = 0;
  AssetKind kind = AssetKind::kExisting;
  double p_min = 0.0;
  double p_max = 0.0;
  // (min, max) per period, used when kind == kNew.
  std::vector<std::pair<double, double>> per_period_limits;
  double energy_cost = 0.0;
  // 1-based period from which the unit is offline; none = always online.
  std::optional<int> retire_period;

  bool online_in(int period_index) const {
    return !retire_period || period_index + 1 < *retire_period;
  }
  double min_output(int period_index) const {
    return kind == AssetKind::kNew ? per_period_limits[period_index].first : p_min;
  }
  double max_output(int period_index) const {
    return kind == AssetKind::kNew ? per_period_limits[period_index].second : p_max;
  }

  bool operator==(const ThermalGenerator&) const = default;
};

struct RenewablePlant {
  int id = 0;
  int bus = 0;
  AssetKind kind = AssetKind::kExisting;
  double p_min = 0.0;
  Profile availability;

  bool operator==(const RenewablePlant&) const = default;
};

struct TransmissionLine {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double reactance = 0.0;
  Profile rating;  // dynamic line rating

  bool operator==(const TransmissionLine&) const = default;
};

struct CandidateLine : TransmissionLine {
  double capital_cost = 0.0;       // M$
  double maintenance_ratio = 0.0;  // per year, relative to capital cost

  bool operator==(const CandidateLine&) const = default;
};

// Electrolyzer + compressor at from_bus, pipeline, fuel cell at to_bus.
struct HydrogenRoute {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double pipeline_capacity = 0.0;    // MWh-H2 per hour
  double electrolyzer_rating = 0.0;  // per-unit
  double fuelcell_rating = 0.0;      // per-unit
  double eta_e = 1.0;
  double eta_f = 1.0;
  double eta_c = 0.05;  // per-unit compressor power per unit hydrogen flow
  double pipeline_cost = 0.0;
  double electrolyzer_cost = 0.0;
  double fuelcell_cost = 0.0;
  double maintenance_ratio = 0.0;

  double round_trip() const { return eta_e * eta_f; }

  bool operator==(const HydrogenRoute&) const = default;
};

struct BusLoad {
  int bus = 0;
  Profile demand;  // per-unit

  bool operator==(const BusLoad&) const = default;
};

inline constexpr double kDefaultShedPenalty = 1e6;
inline constexpr double kDefaultAngleBound = 3.14159265358979323846;

struct NetworkCase {
  std::string name;
  double mva_base = 100.0;
  PlanningHorizon horizon;
  std::vector<Bus> buses;
  std::vector<ThermalGenerator> generators;
  std::vector<RenewablePlant> renewables;
  std::vector<TransmissionLine> lines;
  std::vector<CandidateLine> candidate_lines;
  std::vector<HydrogenRoute> hydrogen_routes;
  std::vector<BusLoad> load;
  double shed_penalty = kDefaultShedPenalty;
  double angle_bound = kDefaultAngleBound;

  // Position of a bus in `buses`; throws ReferenceError when absent.
  std::size_t bus_index(int bus_id) const;
  std::size_t route_index(int route_id) const;
  // Demand at a bus for one slot; zero for buses without a load entry.
  double demand(std::size_t bus_pos, int p, int d, int t) const;
  // Demand profile per bus position (zeros where no load entry exists).
  std::vector<Profile> demand_by_bus() const;
};

// One invariant failure found by validate().
struct Violation {
  std::string entity;  // e.g. "hydrogen_route 3"
  std::string rule;    // e.g. "eta_e out of (0,1]"

  std::string to_string() const { return entity + ": " + rule; }
};

std::vector<Violation> validate(const NetworkCase& grid);

// Throws PreconditionError listing the violations, if any.
void require_valid(const NetworkCase& grid);

// Total weighted energy (per-unit hours x 365/N^D) over the whole horizon.
double weighted_load_energy(const NetworkCase& grid);
double weighted_renewable_energy(const NetworkCase& grid);

// Uniformly rescales every renewable availability tensor so that available
// renewable energy equals `target` times load energy over the horizon.
NetworkCase scale_renewable_penetration(const NetworkCase& grid, double target);

// Multiplies pipeline, electrolyzer and fuel-cell capital costs by
// (1 - reduction).
NetworkCase apply_hydrogen_cost_reduction(const NetworkCase& grid, double reduction);

}  // namespace h2tep
