// wnql: command-line front end for the oracle, single runs, sweeps and
// reports.

#include "wnql/arena.hpp"
#include "wnql/oracle.hpp"
#include "wnql/report.hpp"
#include "wnql/scenario.hpp"
#include "wnql/sweep.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct ModeFlags {
  bool deterministic = false;
  bool sampled = false;

  void add_to(CLI::App *app) {
    auto *d = app->add_flag("--deterministic", deterministic,
                            "Use the shadowing/obstacle means on every link");
    auto *s = app->add_flag("--sampled", sampled, "Draw shadowing/obstacle losses per link");
    d->excludes(s);
  }

  void apply(wnql::Scenario &sc) const {
    if (deterministic)
      sc.path_loss.randomness_mode = wnql::RandomnessMode::deterministic_means;
    if (sampled)
      sc.path_loss.randomness_mode = wnql::RandomnessMode::sampled_per_link;
  }
};

/// A scenario path, or "default" for the built-in default scenario.
wnql::Scenario resolve_scenario(const std::string &arg) {
  if (arg == "default" && !fs::exists(arg))
    return wnql::Scenario{};
  return wnql::load_scenario(arg);
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path &path, const std::string &text) {
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Decentralized stateless Q-learning for channel and transmit power selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wnql::code_version());

  // oracle
  std::string oracle_scenario;
  std::string oracle_json_path;
  ModeFlags oracle_mode;
  auto *oracle = app.add_subcommand("oracle", "Exhaustive aggregate and proportional-fairness optima");
  oracle->add_option("scenario", oracle_scenario, "Scenario file, or 'default'")->required();
  oracle->add_option("--json", oracle_json_path, "Also write the machine-readable result here");
  oracle_mode.add_to(oracle);

  // run
  std::string run_scenario;
  double alpha = 1.0, gamma = 0.95, eps0 = 1.0;
  std::uint64_t iterations = 10000, seed = 1;
  std::string run_out;
  ModeFlags run_mode;
  auto *run = app.add_subcommand("run", "One seeded episode, exported as a trace");
  run->add_option("scenario", run_scenario, "Scenario file, or 'default'")->required();
  run->add_option("--alpha", alpha, "Learning rate in (0, 1]")->capture_default_str();
  run->add_option("--gamma", gamma, "Discount factor in [0, 1)")->capture_default_str();
  run->add_option("--eps0", eps0, "Initial exploration in [0, 1]")->capture_default_str();
  run->add_option("--iterations", iterations, "Iterations")->capture_default_str();
  run->add_option("--seed", seed, "Run seed")->capture_default_str();
  run->add_option("--out", run_out, "Trace CSV path; final Q-tables go to <out>.qtable.csv")
      ->required();
  run_mode.add_to(run);

  // sweep
  std::string sweep_spec;
  std::string sweep_out;
  int workers = 0;
  ModeFlags sweep_mode;
  auto *sweep = app.add_subcommand("sweep", "Repetition batches per (alpha, gamma, eps0) cell");
  sweep->add_option("spec", sweep_spec, "Sweep spec file, or a preset name")->required();
  sweep->add_option("--out", sweep_out, "Run directory")->required();
  sweep->add_option("--workers", workers, "Worker threads (default: WNQL_WORKERS or all cores)");
  sweep_mode.add_to(sweep);

  // report
  std::string report_results;
  std::string report_out;
  std::string report_oracle;
  auto *report = app.add_subcommand("report", "Figure datasets from a results file");
  report->add_option("results", report_results, "results.json written by 'sweep'")->required();
  report->add_option("--out", report_out, "Output directory")->required();
  report->add_option("--oracle", report_oracle, "Oracle JSON to use instead of recomputing");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*oracle) {
      wnql::Scenario sc = resolve_scenario(oracle_scenario);
      oracle_mode.apply(sc);
      const auto pair = wnql::compute_oracles(sc);
      std::cout << wnql::oracle_table(pair);
      const auto &space = sc.deployment.action_space();
      std::cout << "\nactions:";
      for (int k = 1; k <= space.size(); ++k) {
        const auto a = space.action_from_index(k);
        std::cout << ' ' << k << "={" << a.channel << ',' << a.tx_power_dbm << '}';
      }
      std::cout << '\n';
      if (!oracle_json_path.empty())
        write_file(oracle_json_path, wnql::oracle_to_json(pair, space) + "\n");
    } else if (*run) {
      wnql::Scenario sc = resolve_scenario(run_scenario);
      run_mode.apply(sc);
      const auto cfg = wnql::make_learner_config(alpha, gamma, eps0);
      const auto trace = wnql::run_episode(sc.channel_model(seed), cfg, iterations, seed);
      std::ostringstream t, q;
      wnql::write_trace_csv(t, trace);
      wnql::write_qtable_csv(q, trace);
      write_file(run_out, t.str());
      write_file(run_out + ".qtable.csv", q.str());
    } else if (*sweep) {
      wnql::SweepFile file;
      if (!fs::exists(sweep_spec)) {
        auto p = wnql::preset(sweep_spec);
        if (!p)
          throw std::runtime_error("no sweep spec file or preset named '" + sweep_spec + "'");
        file.spec = *p;
        file.scenario_source = "built-in default";
      } else {
        file = wnql::load_sweep_file(sweep_spec);
      }
      sweep_mode.apply(file.scenario);
      const auto result = wnql::run_sweep(file.spec, file.scenario, wnql::Execution::parallel,
                                          workers);
      const fs::path out(sweep_out);
      fs::create_directories(out);
      write_file(out / "results.json", wnql::results_to_json(result) + "\n");
      wnql::write_manifest(result, file.scenario_source, out);
      wnql::write_report(result, wnql::compute_oracles(file.scenario), out);
      std::cout << "wrote " << result.cells.size() << " cell(s) to " << out.string() << '\n';
    } else if (*report) {
      const auto result = wnql::results_from_json(read_file(report_results));
      wnql::OraclePair oracles;
      if (!report_oracle.empty()) {
        oracles = wnql::oracle_from_json(read_file(report_oracle));
      } else {
        oracles = wnql::compute_oracles(wnql::parse_scenario(result.scenario_json, report_results));
      }
      wnql::write_report(result, oracles, report_out);
      std::cout << "wrote report to " << report_out << '\n';
    }
  } catch (const std::exception &e) {
    std::cerr << "wnql: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
