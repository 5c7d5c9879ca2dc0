#include "h2tep/case_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "h2tep/errors.hpp"

namespace h2tep {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  return number(obj, key, where);
}

int integer(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

const json& array(const json& obj, const char* key, const std::string& where) {
  static const json kEmpty = json::array();
  if (!obj.contains(key) || obj.at(key).is_null()) return kEmpty;
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ParseError(where + ": '" + key + "' must be an array");
  return v;
}

AssetKind parse_kind(const json& obj, const std::string& where) {
  if (!obj.contains("kind")) return AssetKind::kExisting;
  const auto kind = obj.at("kind").get<std::string>();
  if (kind == "existing") return AssetKind::kExisting;
  if (kind == "new") return AssetKind::kNew;
  throw ParseError(where + ": kind must be 'existing' or 'new'");
}

// A scalar broadcasts over the whole horizon; otherwise [period][day][hour].
Profile parse_profile(const json& v, const PlanningHorizon& h, double scale,
                      const std::string& where) {
  Profile out(h);
  if (v.is_number()) {
    for (auto& x : out.values()) x = v.get<double>() * scale;
    return out;
  }
  auto shape_error = [&](const std::string& detail) {
    std::ostringstream msg;
    msg << where << ": tensor shape does not match horizon (" << h.n_periods << " x "
        << h.typical_days_per_year << " x " << h.intervals_per_day << "): " << detail;
    return ShapeError(msg.str());
  };
  if (!v.is_array()) throw ParseError(where + ": profile must be a number or nested array");
  if (static_cast<int>(v.size()) != h.n_periods) throw shape_error("period dimension");
  for (int p = 0; p < h.n_periods; ++p) {
    const auto& days = v[p];
    if (!days.is_array() || static_cast<int>(days.size()) != h.typical_days_per_year) {
      throw shape_error("day dimension in period " + std::to_string(p + 1));
    }
    for (int d = 0; d < h.typical_days_per_year; ++d) {
      const auto& hours = days[d];
      if (!hours.is_array() || static_cast<int>(hours.size()) != h.intervals_per_day) {
        throw shape_error("hour dimension in period " + std::to_string(p + 1) + ", day " +
                          std::to_string(d + 1));
      }
      for (int t = 0; t < h.intervals_per_day; ++t) {
        if (!hours[t].is_number()) throw ParseError(where + ": profile entries must be numbers");
        out(p, d, t) = hours[t].get<double>() * scale;
      }
    }
  }
  return out;
}

PlanningHorizon parse_horizon(const json& v) {
  const std::string where = "horizon";
  PlanningHorizon h;
  h.n_periods = integer(v, "n_periods", where);
  h.years_per_period = integer(v, "years_per_period", where);
  h.typical_days_per_year = integer(v, "typical_days_per_year", where);
  h.intervals_per_day = integer(v, "intervals_per_day", where);
  if (h.n_periods < 1 || h.years_per_period < 1 || h.typical_days_per_year < 1 ||
      h.intervals_per_day < 1) {
    throw ParseError("horizon: all counts must be >= 1");
  }
  for (const auto& l : array(v, "period_labels", where)) h.period_labels.push_back(l.get<std::string>());
  for (const auto& l : array(v, "day_labels", where)) h.day_labels.push_back(l.get<std::string>());
  if (h.period_labels.empty()) {
    for (int p = 1; p <= h.n_periods; ++p) h.period_labels.push_back("P" + std::to_string(p));
  }
  if (h.day_labels.empty()) {
    for (int d = 1; d <= h.typical_days_per_year; ++d) h.day_labels.push_back("D" + std::to_string(d));
  }
  return h;
}

void parse_line_fields(const json& v, const PlanningHorizon& h, double base,
                       const std::string& where, TransmissionLine& line) {
  line.id = integer(v, "id", where);
  line.from_bus = integer(v, "from_bus", where);
  line.to_bus = integer(v, "to_bus", where);
  line.reactance = number(v, "reactance", where);
  line.rating = parse_profile(require(v, "rating", where), h, 1.0 / base, where + " rating");
}

NetworkCase parse_case_impl(const json& doc) {
  if (!doc.is_object()) throw ParseError("case document must be a JSON object");
  NetworkCase grid;
  grid.name = doc.value("name", std::string{});
  grid.mva_base = number(doc, "mva_base", "case");
  if (!(grid.mva_base > 0.0)) throw ParseError("case: mva_base must be positive");
  grid.horizon = parse_horizon(require(doc, "horizon", "case"));
  grid.shed_penalty = number_or(doc, "shed_penalty", kDefaultShedPenalty, "case");
  grid.angle_bound = number_or(doc, "angle_bound", kDefaultAngleBound, "case");
  const auto& h = grid.horizon;
  const double base = grid.mva_base;

  for (const auto& v : array(doc, "buses", "case")) {
    Bus bus;
    bus.id = integer(v, "id", "bus");
    bus.name = v.value("name", std::string{});
    bus.is_slack = v.value("is_slack", false);
    grid.buses.push_back(bus);
  }

  for (const auto& v : array(doc, "generators", "case")) {
    ThermalGenerator g;
    const std::string where = "generator";
    g.id = integer(v, "id", where);
    g.bus = integer(v, "bus", where);
    g.kind = parse_kind(v, where);
    if (g.kind == AssetKind::kExisting) {
      g.p_min = number_or(v, "p_min", 0.0, where) / base;
      g.p_max = number(v, "p_max", where) / base;
    } else {
      for (const auto& pair : array(v, "per_period_limits", where)) {
        if (!pair.is_array() || pair.size() != 2) {
          throw ParseError("generator " + std::to_string(g.id) + ": per_period_limits entries are [min, max]");
        }
        g.per_period_limits.emplace_back(pair[0].get<double>() / base, pair[1].get<double>() / base);
      }
      if (static_cast<int>(g.per_period_limits.size()) != h.n_periods) {
        throw ShapeError("generator " + std::to_string(g.id) + ": per_period_limits length must equal n_periods");
      }
    }
    g.energy_cost = number(v, "energy_cost", where) / kDollarsPerMillion;
    if (v.contains("retire_period") && !v.at("retire_period").is_null()) {
      g.retire_period = v.at("retire_period").get<int>();
    }
    grid.generators.push_back(std::move(g));
  }

  for (const auto& v : array(doc, "renewables", "case")) {
    RenewablePlant r;
    const std::string where = "renewable";
    r.id = integer(v, "id", where);
    r.bus = integer(v, "bus", where);
    r.kind = parse_kind(v, where);
    r.p_min = number_or(v, "p_min", 0.0, where) / base;
    r.availability = parse_profile(require(v, "availability", where), h, 1.0 / base,
                                   where + " " + std::to_string(r.id) + " availability");
    grid.renewables.push_back(std::move(r));
  }

  for (const auto& v : array(doc, "lines", "case")) {
    TransmissionLine line;
    parse_line_fields(v, h, base, "line", line);
    grid.lines.push_back(std::move(line));
  }

  for (const auto& v : array(doc, "candidate_lines", "case")) {
    CandidateLine line;
    parse_line_fields(v, h, base, "candidate_line", line);
    line.capital_cost = number(v, "capital_cost", "candidate_line");
    line.maintenance_ratio = number_or(v, "maintenance_ratio", 0.0, "candidate_line");
    grid.candidate_lines.push_back(std::move(line));
  }

  for (const auto& v : array(doc, "hydrogen_routes", "case")) {
    HydrogenRoute r;
    const std::string where = "hydrogen_route";
    r.id = integer(v, "id", where);
    r.from_bus = integer(v, "from_bus", where);
    r.to_bus = integer(v, "to_bus", where);
    r.pipeline_capacity = number(v, "pipeline_capacity", where);
    r.electrolyzer_rating = number(v, "electrolyzer_rating", where) / base;
    r.fuelcell_rating = number(v, "fuelcell_rating", where) / base;
    r.eta_e = number(v, "eta_e", where);
    r.eta_f = number(v, "eta_f", where);
    r.eta_c = number_or(v, "eta_c", 0.05, where);
    r.pipeline_cost = number(v, "pipeline_cost", where);
    r.electrolyzer_cost = number(v, "electrolyzer_cost", where);
    r.fuelcell_cost = number(v, "fuelcell_cost", where);
    r.maintenance_ratio = number_or(v, "maintenance_ratio", 0.0, where);
    grid.hydrogen_routes.push_back(r);
  }

  for (const auto& v : array(doc, "load", "case")) {
    BusLoad entry;
    entry.bus = integer(v, "bus", "load");
    entry.demand = parse_profile(require(v, "demand", "load"), h, 1.0 / base,
                                 "load at bus " + std::to_string(entry.bus));
    grid.load.push_back(std::move(entry));
  }

  // Resolve every bus reference up front so later modules can index freely.
  std::set<int> ids;
  for (const auto& b : grid.buses) ids.insert(b.id);
  auto check = [&](int bus, const std::string& who) {
    if (!ids.count(bus)) {
      throw ReferenceError(who + " references unknown bus " + std::to_string(bus));
    }
  };
  for (const auto& g : grid.generators) check(g.bus, "generator " + std::to_string(g.id));
  for (const auto& r : grid.renewables) check(r.bus, "renewable " + std::to_string(r.id));
  for (const auto& l : grid.lines) {
    check(l.from_bus, "line " + std::to_string(l.id));
    check(l.to_bus, "line " + std::to_string(l.id));
  }
  for (const auto& l : grid.candidate_lines) {
    check(l.from_bus, "candidate_line " + std::to_string(l.id));
    check(l.to_bus, "candidate_line " + std::to_string(l.id));
  }
  for (const auto& r : grid.hydrogen_routes) {
    check(r.from_bus, "hydrogen_route " + std::to_string(r.id));
    check(r.to_bus, "hydrogen_route " + std::to_string(r.id));
  }
  for (const auto& l : grid.load) check(l.bus, "load entry");
  return grid;
}

}  // namespace

NetworkCase parse_case(const json& doc) {
  try {
    return parse_case_impl(doc);
  } catch (const json::exception& e) {
    throw ParseError(std::string("case document: ") + e.what());
  }
}

NetworkCase load_case(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open case file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  auto grid = parse_case(doc);
  if (grid.name.empty()) grid.name = path.stem().string();
  return grid;
}

json profile_to_json(const Profile& profile, double scale) {
  json periods = json::array();
  for (int p = 0; p < profile.periods(); ++p) {
    json days = json::array();
    for (int d = 0; d < profile.days(); ++d) {
      json hours = json::array();
      for (int t = 0; t < profile.hours(); ++t) hours.push_back(profile(p, d, t) * scale);
      days.push_back(std::move(hours));
    }
    periods.push_back(std::move(days));
  }
  return periods;
}

json case_to_json(const NetworkCase& grid) {
  const double base = grid.mva_base;
  json doc;
  doc["name"] = grid.name;
  doc["mva_base"] = base;
  doc["horizon"] = {
      {"n_periods", grid.horizon.n_periods},
      {"years_per_period", grid.horizon.years_per_period},
      {"typical_days_per_year", grid.horizon.typical_days_per_year},
      {"intervals_per_day", grid.horizon.intervals_per_day},
      {"period_labels", grid.horizon.period_labels},
      {"day_labels", grid.horizon.day_labels},
  };
  doc["buses"] = json::array();
  for (const auto& b : grid.buses) {
    doc["buses"].push_back({{"id", b.id}, {"name", b.name}, {"is_slack", b.is_slack}});
  }
  doc["generators"] = json::array();
  for (const auto& g : grid.generators) {
    json v = {{"id", g.id}, {"bus", g.bus}, {"energy_cost", g.energy_cost * kDollarsPerMillion}};
    if (g.kind == AssetKind::kExisting) {
      v["kind"] = "existing";
      v["p_min"] = g.p_min * base;
      v["p_max"] = g.p_max * base;
    } else {
      v["kind"] = "new";
      v["per_period_limits"] = json::array();
      for (const auto& [lo, hi] : g.per_period_limits) {
        v["per_period_limits"].push_back({lo * base, hi * base});
      }
    }
    if (g.retire_period) v["retire_period"] = *g.retire_period;
    doc["generators"].push_back(std::move(v));
  }
  doc["renewables"] = json::array();
  for (const auto& r : grid.renewables) {
    doc["renewables"].push_back({{"id", r.id},
                                 {"bus", r.bus},
                                 {"kind", r.kind == AssetKind::kNew ? "new" : "existing"},
                                 {"p_min", r.p_min * base},
                                 {"availability", profile_to_json(r.availability, base)}});
  }
  auto line_json = [&](const TransmissionLine& l) {
    return json{{"id", l.id},
                {"from_bus", l.from_bus},
                {"to_bus", l.to_bus},
                {"reactance", l.reactance},
                {"rating", profile_to_json(l.rating, base)}};
  };
  doc["lines"] = json::array();
  for (const auto& l : grid.lines) doc["lines"].push_back(line_json(l));
  doc["candidate_lines"] = json::array();
  for (const auto& l : grid.candidate_lines) {
    auto v = line_json(l);
    v["capital_cost"] = l.capital_cost;
    v["maintenance_ratio"] = l.maintenance_ratio;
    doc["candidate_lines"].push_back(std::move(v));
  }
  doc["hydrogen_routes"] = json::array();
  for (const auto& r : grid.hydrogen_routes) {
    doc["hydrogen_routes"].push_back({{"id", r.id},
                                      {"from_bus", r.from_bus},
                                      {"to_bus", r.to_bus},
                                      {"pipeline_capacity", r.pipeline_capacity},
                                      {"electrolyzer_rating", r.electrolyzer_rating * base},
                                      {"fuelcell_rating", r.fuelcell_rating * base},
                                      {"eta_e", r.eta_e},
                                      {"eta_f", r.eta_f},
                                      {"eta_c", r.eta_c},
                                      {"pipeline_cost", r.pipeline_cost},
                                      {"electrolyzer_cost", r.electrolyzer_cost},
                                      {"fuelcell_cost", r.fuelcell_cost},
                                      {"maintenance_ratio", r.maintenance_ratio}});
  }
  doc["load"] = json::array();
  for (const auto& l : grid.load) {
    doc["load"].push_back({{"bus", l.bus}, {"demand", profile_to_json(l.demand, base)}});
  }
  doc["shed_penalty"] = grid.shed_penalty;
  doc["angle_bound"] = grid.angle_bound;
  return doc;
}

void save_case(const NetworkCase& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write case file " + path.string());
  out << case_to_json(grid).dump(2) << '\n';
}

}  // namespace h2tep
