#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

#include "h2tep/case_io.hpp"
#include "h2tep/grid_model.hpp"

namespace h2tep::test_support {

inline std::filesystem::path case_path(const std::string& name) {
  return std::filesystem::path(H2TEP_CASE_DIR) / name;
}

inline NetworkCase bundled(const std::string& name) { return load_case(case_path(name + ".json")); }

inline PlanningHorizon small_horizon(int periods, int hours) {
  PlanningHorizon h;
  h.n_periods = periods;
  h.years_per_period = 5;
  h.typical_days_per_year = 1;
  h.intervals_per_day = hours;
  for (int p = 0; p < periods; ++p) h.period_labels.push_back("P" + std::to_string(p + 1));
  h.day_labels = {"D1"};
  return h;
}

// Random connected network: up to 5 buses, up to 2 candidate lines and 2
// hydrogen routes, 2 periods x 1 day x 4 hours, every p_min = 0.
inline NetworkCase random_case(std::mt19937& rng) {
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  NetworkCase g;
  g.name = "random";
  g.mva_base = 100.0;
  g.horizon = small_horizon(2, 4);
  g.shed_penalty = 1000.0;
  const auto& h = g.horizon;

  const int n = pick(2, 5);
  for (int b = 1; b <= n; ++b) g.buses.push_back({b, "", b == 1});
  auto random_profile = [&](double lo, double hi) {
    Profile prof(h);
    for (auto& v : prof.values()) v = uni(lo, hi);
    return prof;
  };

  int line_id = 1;
  for (int b = 2; b <= n; ++b) {
    TransmissionLine l;
    l.id = line_id++;
    l.from_bus = pick(1, b - 1);
    l.to_bus = b;
    l.reactance = uni(0.02, 0.1);
    l.rating = Profile(h, uni(0.5, 2.5));
    g.lines.push_back(l);
  }

  const int gens = pick(1, 3);
  for (int k = 1; k <= gens; ++k) {
    ThermalGenerator gen;
    gen.id = k;
    gen.bus = pick(1, n);
    gen.p_max = uni(1.0, 4.0);
    gen.energy_cost = uni(20.0, 100.0) * 1e-6;
    g.generators.push_back(gen);
  }
  const int rens = pick(1, 2);
  for (int k = 1; k <= rens; ++k) {
    RenewablePlant r;
    r.id = k;
    r.bus = pick(1, n);
    r.availability = random_profile(0.0, 3.0);
    g.renewables.push_back(r);
  }
  for (int b = 1; b <= n; ++b) {
    if (b > 1 && pick(0, 3) == 0) continue;
    BusLoad load;
    load.bus = b;
    load.demand = random_profile(0.2, 2.0);
    // Growth into the second period.
    for (int t = 0; t < h.intervals_per_day; ++t) load.demand(1, 0, t) *= uni(1.0, 1.4);
    g.load.push_back(load);
  }

  if (n >= 2) {
    const int cands = pick(0, 2);
    for (int k = 0; k < cands; ++k) {
      CandidateLine c;
      c.id = 100 + k;
      c.from_bus = pick(1, n);
      do {
        c.to_bus = pick(1, n);
      } while (c.to_bus == c.from_bus);
      c.reactance = uni(0.02, 0.1);
      c.rating = Profile(h, uni(0.5, 2.0));
      c.capital_cost = uni(5.0, 120.0);
      c.maintenance_ratio = uni(0.0, 0.03);
      g.candidate_lines.push_back(c);
    }
    const int routes = pick(0, 2);
    for (int k = 0; k < routes; ++k) {
      HydrogenRoute r;
      r.id = 200 + k;
      r.from_bus = pick(1, n);
      do {
        r.to_bus = pick(1, n);
      } while (r.to_bus == r.from_bus);
      r.eta_e = uni(0.55, 0.95);
      r.eta_f = uni(0.55, 0.95);
      r.eta_c = uni(0.0, 0.08);
      r.electrolyzer_rating = uni(0.5, 2.0);
      r.fuelcell_rating = uni(0.3, 1.5);
      r.pipeline_capacity = uni(30.0, 150.0);
      r.pipeline_cost = uni(5.0, 80.0);
      r.electrolyzer_cost = uni(1.0, 20.0);
      r.fuelcell_cost = uni(1.0, 20.0);
      r.maintenance_ratio = uni(0.0, 0.03);
      g.hydrogen_routes.push_back(r);
    }
  }
  return g;
}

}  // namespace h2tep::test_support
