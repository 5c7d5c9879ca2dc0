#include "h2tep/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "h2tep/case_io.hpp"
#include "h2tep/errors.hpp"
#include "h2tep/milp/mps.hpp"
#include "h2tep/oracle.hpp"
#include "h2tep/scenario.hpp"

namespace h2tep::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string case_path;
  std::string model = "tep-h";
  double gap = 1e-3;
  long node_limit = 200000;
  std::string out_dir = "out";
  std::string plan_path;
  std::vector<double> penetration;
  std::vector<double> round_trip;
  std::vector<double> cost_reduction;
  unsigned workers = 0;
  std::string config_path;
};

struct UsageError : Error {
  using Error::Error;
};

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

// Values from --config fill every option not given on the command line.
void apply_config(CLI::App& sub, RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  const auto doc = read_json(cfg.config_path);
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  auto given = [&](const char* flag) {
    try {
      return sub.get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return true;  // not an option of this subcommand
    }
  };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "case" && !given("--case")) {
        cfg.case_path = value.get<std::string>();
      } else if (key == "model" && !given("--model")) {
        cfg.model = value.get<std::string>();
      } else if (key == "gap" && !given("--gap")) {
        cfg.gap = value.get<double>();
      } else if (key == "node_limit" && !given("--node-limit")) {
        cfg.node_limit = value.get<long>();
      } else if (key == "out" && !given("--out")) {
        cfg.out_dir = value.get<std::string>();
      } else if (key == "plan" && !given("--plan")) {
        cfg.plan_path = value.get<std::string>();
      } else if (key == "penetration" && !given("--penetration")) {
        cfg.penetration = value.get<std::vector<double>>();
      } else if (key == "round_trip" && !given("--round-trip")) {
        cfg.round_trip = value.get<std::vector<double>>();
      } else if (key == "cost_reduction" && !given("--cost-reduction")) {
        cfg.cost_reduction = value.get<std::vector<double>>();
      } else if (key == "workers" && !given("--workers")) {
        cfg.workers = value.get<unsigned>();
      }
    }
  } catch (const json::exception& e) {
    throw UsageError("config " + cfg.config_path + ": " + e.what());
  }
}

void check_config(const RunConfig& cfg, bool needs_case) {
  if (needs_case && cfg.case_path.empty()) throw UsageError("--case is required");
  if (!(cfg.gap > 0.0 && cfg.gap < 1.0)) throw UsageError("--gap must lie in (0, 1)");
  if (cfg.node_limit <= 0) throw UsageError("--node-limit must be positive");
}

milp::MilpOptions milp_options(const RunConfig& cfg) {
  milp::MilpOptions opt;
  opt.gap_target = cfg.gap;
  opt.node_limit = cfg.node_limit;
  return opt;
}

ModelKind model_of(const RunConfig& cfg) {
  try {
    return parse_model_kind(cfg.model);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto grid = load_case(cfg.case_path);
  const auto violations = validate(grid);
  for (const auto& v : violations) out << v.to_string() << '\n';
  if (violations.empty()) {
    out << "ok: " << grid.name << '\n';
    return kExitOk;
  }
  out << violations.size() << " violation(s)\n";
  return kExitData;
}

void write_operation(const OperationResult& result, const NetworkCase& grid, const fs::path& dir) {
  write_json(dir / "plan.json", plan_to_json(grid, result.plan));
  write_json(dir / "operation.json", result_to_json(result, grid));
  write_result_csv(result, grid, dir / "operation.csv");
  emit_timeseries(result, grid, {}, dir / "timeseries");
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const auto grid = load_case(cfg.case_path);
  const auto kind = model_of(cfg);
  const auto outcome = solve_planning(grid, kind, milp_options(cfg));
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  write_operation(outcome.result, grid, dir);
  auto costs = cost_to_json(outcome.result.costs);
  costs["model"] = to_string(kind);
  costs["status"] = milp::to_string(outcome.status);
  costs["gap"] = outcome.gap;
  costs["best_bound"] = outcome.best_bound;
  costs["nodes"] = outcome.nodes;
  write_json(dir / "costs.json", costs);
  out << "model " << to_string(kind) << " status " << milp::to_string(outcome.status) << " total "
      << outcome.result.costs.total << " gap " << outcome.gap << '\n';
  out << "routes built " << outcome.result.plan.routes_built() << ", lines built "
      << outcome.result.plan.lines_built() << "; outputs in " << dir.string() << '\n';
  return outcome.status == milp::MilpStatus::kNodeLimit ? kExitSolver : kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.plan_path.empty()) throw UsageError("--plan is required");
  const auto grid = load_case(cfg.case_path);
  const auto kind = model_of(cfg);
  const auto plan = plan_from_json(grid, read_json(cfg.plan_path));
  const auto result = evaluate_plan(grid, plan, kind);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  write_operation(result, grid, dir);
  write_json(dir / "costs.json", cost_to_json(result.costs));
  out << "total " << result.costs.total << " shed " << result.total_shed() * grid.mva_base << " MWh\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto grid = load_case(cfg.case_path);
  const auto kind = model_of(cfg);
  SweepAxis axes{cfg.penetration, cfg.round_trip, cfg.cost_reduction};
  const auto rows = run_sweep(grid, axes, kind, milp_options(cfg), cfg.workers);
  const auto files = emit_tables(rows, table_stem(kind, axes), cfg.out_dir);
  int failed = 0;
  for (const auto& r : rows) failed += r.status == "failed";
  out << rows.size() << " scenario(s), " << failed << " failed; wrote " << files.front().string() << '\n';
  return failed ? kExitSolver : kExitOk;
}

int cmd_export(const RunConfig& cfg, std::ostream& out) {
  const auto grid = load_case(cfg.case_path);
  const auto kind = model_of(cfg);
  const auto tep = kind == ModelKind::kTepH ? build_tep_h(grid) : build_tep_t(grid);
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  const auto path = dir / (grid.name + "_" + to_string(kind) + ".mps");
  milp::export_mps(tep.model, path);
  out << "wrote " << path.string() << " (" << tep.model.column_count() << " columns, " << tep.model.row_count()
      << " rows, " << tep.model.integer_count() << " integer)\n";
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto grid = load_case(cfg.case_path);
  const auto kind = model_of(cfg);
  const auto oracle = brute_force_optimum(grid, kind);
  const auto outcome = solve_planning(grid, kind, milp_options(cfg));
  const double ref = oracle.costs.total;
  const double gap = std::abs(outcome.result.costs.total - ref) / std::max(std::abs(ref), 1e-9);
  json report{{"model", to_string(kind)},
              {"plans_evaluated", oracle.plans_evaluated},
              {"oracle_total", ref},
              {"milp_total", outcome.result.costs.total},
              {"relative_gap", gap},
              {"gap_target", cfg.gap},
              {"oracle_plan", plan_to_json(grid, oracle.plan)},
              {"milp_plan", plan_to_json(grid, outcome.result.plan)}};
  out << std::setprecision(10) << "oracle " << ref << " milp " << outcome.result.costs.total << " relative gap "
      << gap << '\n';
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  write_json(dir / "oracle_check.json", report);
  return gap <= cfg.gap ? kExitOk : kExitSolver;
}

void error_line(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmission and hydrogen co-expansion planning", "h2tep"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool solver) {
    sub->add_option("--case", cfg.case_path, "case file (JSON)");
    sub->add_option("--config", cfg.config_path, "JSON file with any of the options below");
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    if (!solver) return;
    sub->add_option("--model", cfg.model, "tep-h or tep-t")->capture_default_str();
    sub->add_option("--gap", cfg.gap, "relative optimality gap")->capture_default_str();
    sub->add_option("--node-limit", cfg.node_limit, "branch-and-bound node limit")->capture_default_str();
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a case against the model invariants");
  common(validate_cmd, false);
  auto* plan_cmd = app.add_subcommand("plan", "solve the planning model");
  common(plan_cmd, true);
  auto* evaluate_cmd = app.add_subcommand("evaluate", "solve the operation LP of a given plan");
  common(evaluate_cmd, true);
  evaluate_cmd->add_option("--plan", cfg.plan_path, "plan file (JSON)");
  auto* sweep_cmd = app.add_subcommand("sweep", "solve a grid of scenario points");
  common(sweep_cmd, true);
  sweep_cmd->add_option("--penetration", cfg.penetration, "renewable penetration levels")->delimiter(',');
  sweep_cmd->add_option("--round-trip", cfg.round_trip, "hydrogen round-trip efficiencies")->delimiter(',');
  sweep_cmd->add_option("--cost-reduction", cfg.cost_reduction, "hydrogen cost reductions")->delimiter(',');
  sweep_cmd->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  auto* export_cmd = app.add_subcommand("export-mps", "write the planning model as an MPS file");
  common(export_cmd, true);
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the MILP optimum with plan enumeration");
  common(oracle_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    apply_config(*sub, cfg);
    check_config(cfg, true);
    if (sub == validate_cmd) return cmd_validate(cfg, out);
    if (sub == plan_cmd) return cmd_plan(cfg, out);
    if (sub == evaluate_cmd) return cmd_evaluate(cfg, out);
    if (sub == sweep_cmd) return cmd_sweep(cfg, out);
    if (sub == export_cmd) return cmd_export(cfg, out);
    return cmd_oracle(cfg, out);
  } catch (const UsageError& e) {
    error_line(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  } catch (const SolverError& e) {
    error_line(err, "solver", e.what(), kExitSolver);
    return kExitSolver;
  } catch (const Error& e) {
    error_line(err, "data", e.what(), kExitData);
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    error_line(err, "data", e.what(), kExitData);
    return kExitData;
  }
}

}  // namespace h2tep::cli
