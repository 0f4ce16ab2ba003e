#include "wnql/report.hpp"

#include "wnql/text.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#ifndef WNQL_VERSION
#define WNQL_VERSION "unknown"
#endif
#ifndef WNQL_GIT_REVISION
#define WNQL_GIT_REVISION "unknown"
#endif

namespace wnql {

using nlohmann::json;

std::string code_version() { return std::string(WNQL_VERSION) + "+" + WNQL_GIT_REVISION; }

OraclePair compute_oracles(const Scenario &scenario) {
  const ChannelModel model = scenario.channel_model();
  return {scenario_fingerprint(scenario), optimal_aggregate(model),
          optimal_proportional_fairness(model)};
}

namespace {

std::string cell_text(const OracleResult &res, std::size_t network) {
  if (!res.feasible)
    return "-";
  std::string out = std::to_string(res.maximizers.front()[network]);
  if (res.maximizers.size() > 1) {
    out += " (";
    for (std::size_t m = 1; m < res.maximizers.size(); ++m) {
      if (m > 1)
        out += '/';
      out += std::to_string(res.maximizers[m][network]);
    }
    out += ')';
  }
  return out;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width)
    s.append(width - s.size(), ' ');
  return s;
}

json oracle_result_json(const OracleResult &res) {
  json j;
  j["objective"] = to_string(res.objective);
  j["feasible"] = res.feasible;
  j["value"] = res.feasible ? json(res.value) : json(nullptr);
  j["maximizers"] = res.maximizers;
  j["per_network_throughput_bps"] = res.per_network_throughput_bps;
  return j;
}

OracleResult oracle_result_from(const json &j) {
  OracleResult res;
  res.objective = j.at("objective") == "aggregate" ? Objective::aggregate
                                                   : Objective::proportional_fairness;
  res.feasible = j.at("feasible").get<bool>();
  res.value = res.feasible ? j.at("value").get<double>()
                           : -std::numeric_limits<double>::infinity();
  res.maximizers = j.at("maximizers").get<std::vector<JointAction>>();
  res.per_network_throughput_bps =
      j.at("per_network_throughput_bps").get<std::vector<std::vector<double>>>();
  return res;
}

std::ofstream open_dataset(const std::filesystem::path &path, const char *schema,
                           const std::vector<std::string> &header) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot write " + path.string());
  os << "# schema: " << schema << '\n' << csv_row(header) << '\n';
  return os;
}

std::vector<std::string> cell_fields(std::size_t index, const Cell &c) {
  return {std::to_string(index + 1), format_double(c.alpha), format_double(c.gamma),
          format_double(c.eps0)};
}

} // namespace

std::string oracle_table(const OraclePair &oracles) {
  const std::size_t n = oracles.aggregate.feasible ? oracles.aggregate.maximizers.front().size()
                                                   : 0;
  std::ostringstream os;
  const std::size_t w0 = 7, w1 = 26;
  os << pad("WN id", w0) << " | " << pad("Aggregate throughput", w1) << " | "
     << "Proportional fairness\n";
  os << std::string(w0, '-') << "-+-" << std::string(w1, '-') << "-+-" << std::string(w1, '-')
     << '\n';
  for (std::size_t i = 0; i < n; ++i)
    os << pad(std::to_string(i + 1), w0) << " | " << pad(cell_text(oracles.aggregate, i), w1)
       << " | " << cell_text(oracles.proportional_fairness, i) << '\n';
  os << '\n';
  os << "aggregate optimum: " << format_double(oracles.aggregate.value / 1e6) << " Mbps ("
     << oracles.aggregate.maximizers.size() << " maximizer(s))\n";
  if (oracles.proportional_fairness.feasible) {
    const auto &tp = oracles.proportional_fairness.per_network_throughput_bps.front();
    double sum = 0.0;
    for (const double v : tp)
      sum += v;
    os << "proportional fairness optimum: sum log = "
       << format_double(oracles.proportional_fairness.value) << ", aggregate "
       << format_double(sum / 1e6) << " Mbps ("
       << oracles.proportional_fairness.maximizers.size() << " maximizer(s))\n";
  } else {
    os << "proportional fairness: no finite point\n";
  }
  return os.str();
}

std::string oracle_to_json(const OraclePair &oracles, const ActionSpace &space) {
  json j;
  j["schema"] = "wnql-oracle/1";
  j["scenario_fingerprint"] = oracles.scenario_fingerprint;
  json actions = json::array();
  for (int k = 1; k <= space.size(); ++k) {
    const Action a = space.action_from_index(k);
    actions.push_back({{"index", k}, {"channel", a.channel}, {"tx_power_dbm", a.tx_power_dbm}});
  }
  j["actions"] = actions;
  j["aggregate"] = oracle_result_json(oracles.aggregate);
  j["proportional_fairness"] = oracle_result_json(oracles.proportional_fairness);
  return j.dump(2);
}

OraclePair oracle_from_json(const std::string &text) {
  const json j = json::parse(text);
  if (j.at("schema") != "wnql-oracle/1")
    throw std::invalid_argument("oracle file: expected schema wnql-oracle/1");
  return {j.at("scenario_fingerprint").get<std::string>(), oracle_result_from(j.at("aggregate")),
          oracle_result_from(j.at("proportional_fairness"))};
}

std::string results_to_json(const SweepResult &r) {
  json j;
  j["schema"] = "wnql-results/1";
  j["scenario_fingerprint"] = r.scenario_fingerprint;
  j["scenario"] = json::parse(r.scenario_json);
  j["n_channels"] = r.n_channels;
  j["power_levels_dbm"] = r.power_levels_dbm;
  j["oracle_aggregate_bps"] = r.oracle_aggregate_bps;
  j["oracle_proportional_fairness"] = r.oracle_proportional_fairness;
  j["spec"] = {{"name", r.spec.name},
               {"iterations", r.spec.iterations},
               {"window", r.spec.window},
               {"repetitions", r.spec.repetitions},
               {"master_seed", r.spec.master_seed},
               {"timeseries", r.spec.record_timeseries}};
  json cells = json::array();
  for (const auto &c : r.cells) {
    json cj;
    cj["alpha"] = c.cell.alpha;
    cj["gamma"] = c.cell.gamma;
    cj["eps0"] = c.cell.eps0;
    cj["mean_aggregate_bps"] = c.mean_aggregate_bps;
    cj["std_aggregate_bps"] = c.std_aggregate_bps;
    cj["optimum_aggregate_bps"] = c.optimum_aggregate_bps;
    cj["mean_throughput_bps"] = c.mean_throughput_bps;
    cj["mean_within_run_std_bps"] = c.mean_within_run_std_bps;
    cj["mean_action_frequencies"] = c.mean_action_frequencies;
    json eps = json::array();
    for (const auto &e : c.episodes)
      eps.push_back({{"repetition", e.repetition},
                     {"seed", e.seed},
                     {"window", e.metrics.window},
                     {"mean_aggregate_bps", e.metrics.mean_aggregate_bps},
                     {"mean_throughput_bps", e.metrics.mean_throughput_bps},
                     {"std_throughput_bps", e.metrics.std_throughput_bps},
                     {"action_frequencies", e.metrics.action_frequencies},
                     {"optimum_aggregate_bps", e.optimum_aggregate_bps}});
    cj["episodes"] = eps;
    cj["timeseries_bps"] = c.timeseries_bps;
    cells.push_back(std::move(cj));
  }
  j["cells"] = cells;
  return j.dump();
}

SweepResult results_from_json(const std::string &text) {
  const json j = json::parse(text);
  if (j.at("schema") != "wnql-results/1")
    throw std::invalid_argument("results file: expected schema wnql-results/1");
  SweepResult r;
  r.scenario_fingerprint = j.at("scenario_fingerprint").get<std::string>();
  r.scenario_json = j.at("scenario").dump(2);
  r.n_channels = j.at("n_channels").get<int>();
  r.power_levels_dbm = j.at("power_levels_dbm").get<std::vector<double>>();
  r.oracle_aggregate_bps = j.at("oracle_aggregate_bps").get<double>();
  r.oracle_proportional_fairness = j.at("oracle_proportional_fairness").get<double>();
  const auto &s = j.at("spec");
  r.spec.name = s.at("name").get<std::string>();
  r.spec.iterations = s.at("iterations").get<std::uint64_t>();
  r.spec.window = s.at("window").get<std::size_t>();
  r.spec.repetitions = s.at("repetitions").get<std::size_t>();
  r.spec.master_seed = s.at("master_seed").get<std::uint64_t>();
  r.spec.record_timeseries = s.at("timeseries").get<bool>();
  for (const auto &cj : j.at("cells")) {
    CellResult c;
    c.cell = {cj.at("alpha").get<double>(), cj.at("gamma").get<double>(),
              cj.at("eps0").get<double>()};
    r.spec.cells.push_back(c.cell);
    c.mean_aggregate_bps = cj.at("mean_aggregate_bps").get<double>();
    c.std_aggregate_bps = cj.at("std_aggregate_bps").get<double>();
    c.optimum_aggregate_bps = cj.at("optimum_aggregate_bps").get<double>();
    c.mean_throughput_bps = cj.at("mean_throughput_bps").get<std::vector<double>>();
    c.mean_within_run_std_bps = cj.at("mean_within_run_std_bps").get<std::vector<double>>();
    c.mean_action_frequencies =
        cj.at("mean_action_frequencies").get<std::vector<std::vector<double>>>();
    for (const auto &ej : cj.at("episodes")) {
      EpisodeSummary e;
      e.repetition = ej.at("repetition").get<std::size_t>();
      e.seed = ej.at("seed").get<std::uint64_t>();
      e.metrics.window = ej.at("window").get<std::size_t>();
      e.metrics.mean_aggregate_bps = ej.at("mean_aggregate_bps").get<double>();
      e.metrics.mean_throughput_bps = ej.at("mean_throughput_bps").get<std::vector<double>>();
      e.metrics.std_throughput_bps = ej.at("std_throughput_bps").get<std::vector<double>>();
      e.metrics.action_frequencies =
          ej.at("action_frequencies").get<std::vector<std::vector<double>>>();
      e.optimum_aggregate_bps = ej.at("optimum_aggregate_bps").get<double>();
      c.episodes.push_back(std::move(e));
    }
    c.timeseries_bps = cj.at("timeseries_bps").get<std::vector<std::vector<double>>>();
    r.cells.push_back(std::move(c));
  }
  return r;
}

void write_report(const SweepResult &result, const OraclePair &oracles,
                  const std::filesystem::path &out_dir) {
  if (oracles.scenario_fingerprint != result.scenario_fingerprint)
    throw std::invalid_argument("report: oracle scenario " + oracles.scenario_fingerprint +
                                " does not match results scenario " +
                                result.scenario_fingerprint);
  std::filesystem::create_directories(out_dir);
  const double optimum = oracles.aggregate.value;
  const ActionSpace space(result.n_channels, result.power_levels_dbm);

  {
    auto os = open_dataset(out_dir / "cells.csv", "wnql-cells/1",
                           {"cell", "alpha", "gamma", "eps0", "repetitions",
                            "mean_aggregate_bps", "std_aggregate_bps", "optimum_aggregate_bps",
                            "fraction_of_optimum", "optimum_per_run_bps"});
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto &c = result.cells[i];
      auto row = cell_fields(i, c.cell);
      row.push_back(std::to_string(c.episodes.size()));
      row.push_back(format_double(c.mean_aggregate_bps));
      row.push_back(format_double(c.std_aggregate_bps));
      row.push_back(format_double(optimum));
      row.push_back(format_double(c.mean_aggregate_bps / optimum));
      row.push_back(format_double(c.optimum_aggregate_bps));
      os << csv_row(row) << '\n';
    }
  }
  {
    auto os = open_dataset(out_dir / "per_network_means.csv", "wnql-per-network/1",
                           {"cell", "alpha", "gamma", "eps0", "network",
                            "single_run_mean_bps", "mean_over_runs_bps",
                            "mean_within_run_std_bps"});
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto &c = result.cells[i];
      const auto &first = c.episodes.front().metrics;
      for (std::size_t wn = 0; wn < c.mean_throughput_bps.size(); ++wn) {
        auto row = cell_fields(i, c.cell);
        row.push_back(std::to_string(wn + 1));
        row.push_back(format_double(first.mean_throughput_bps[wn]));
        row.push_back(format_double(c.mean_throughput_bps[wn]));
        row.push_back(format_double(c.mean_within_run_std_bps[wn]));
        os << csv_row(row) << '\n';
      }
    }
  }
  {
    auto os = open_dataset(out_dir / "timeseries.csv", "wnql-timeseries/1",
                           {"cell", "t", "network", "throughput_bps"});
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto &ts = result.cells[i].timeseries_bps;
      for (std::size_t t = 0; t < ts.size(); ++t)
        for (std::size_t wn = 0; wn < ts[t].size(); ++wn)
          os << (i + 1) << ',' << (t + 1) << ',' << (wn + 1) << ',' << format_double(ts[t][wn])
             << '\n';
    }
  }
  {
    auto os = open_dataset(out_dir / "action_frequencies.csv", "wnql-actions/1",
                           {"cell", "alpha", "gamma", "eps0", "network", "action", "channel",
                            "tx_power_dbm", "single_run_probability", "mean_probability"});
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto &c = result.cells[i];
      const auto &first = c.episodes.front().metrics;
      for (std::size_t wn = 0; wn < c.mean_action_frequencies.size(); ++wn) {
        for (int k = 1; k <= space.size(); ++k) {
          const Action a = space.action_from_index(k);
          auto row = cell_fields(i, c.cell);
          row.push_back(std::to_string(wn + 1));
          row.push_back(std::to_string(k));
          row.push_back(std::to_string(a.channel));
          row.push_back(format_double(a.tx_power_dbm));
          row.push_back(format_double(first.action_frequencies[wn][k - 1]));
          row.push_back(format_double(c.mean_action_frequencies[wn][k - 1]));
          os << csv_row(row) << '\n';
        }
      }
    }
  }
  {
    // Sorted by (eps0, alpha, gamma) so each eps0 slice is a contiguous grid.
    std::map<std::tuple<double, double, double>, const CellResult *> grid;
    for (const auto &c : result.cells)
      grid.emplace(std::make_tuple(c.cell.eps0, c.cell.alpha, c.cell.gamma), &c);
    auto os = open_dataset(out_dir / "alpha_gamma_grid.csv", "wnql-grid/1",
                           {"eps0", "alpha", "gamma", "mean_aggregate_bps",
                            "std_aggregate_bps"});
    for (const auto &[key, c] : grid)
      os << csv_row({format_double(std::get<0>(key)), format_double(std::get<1>(key)),
                     format_double(std::get<2>(key)), format_double(c->mean_aggregate_bps),
                     format_double(c->std_aggregate_bps)})
         << '\n';
  }
  {
    auto os = open_dataset(out_dir / "episodes.csv", "wnql-episodes/1",
                           {"cell", "repetition", "seed", "window_aggregate_bps",
                            "optimum_aggregate_bps"});
    for (std::size_t i = 0; i < result.cells.size(); ++i)
      for (const auto &e : result.cells[i].episodes)
        os << csv_row({std::to_string(i + 1), std::to_string(e.repetition),
                       std::to_string(e.seed), format_double(e.metrics.mean_aggregate_bps),
                       format_double(e.optimum_aggregate_bps)})
           << '\n';
  }
  {
    std::ofstream os(out_dir / "oracle.json");
    os << oracle_to_json(oracles, space) << '\n';
  }
}

void write_manifest(const SweepResult &result, const std::string &scenario_source,
                    const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir);
  json cells = json::array();
  for (const auto &c : result.spec.cells)
    cells.push_back({{"alpha", c.alpha}, {"gamma", c.gamma}, {"eps0", c.eps0}});
  json j;
  j["schema"] = "wnql-manifest/1";
  j["code_version"] = code_version();
  j["scenario_source"] = scenario_source;
  j["scenario_fingerprint"] = result.scenario_fingerprint;
  j["scenario"] = json::parse(result.scenario_json);
  j["sweep"] = {{"name", result.spec.name},
                {"cells", cells},
                {"iterations", result.spec.iterations},
                {"window", result.spec.window},
                {"repetitions", result.spec.repetitions},
                {"master_seed", result.spec.master_seed},
                {"timeseries", result.spec.record_timeseries}};
  j["seed_derivation"] = "hash(master_seed, alpha bits, gamma bits, eps0 bits, repetition); "
                         "per-episode seeds listed in episodes.csv";
  j["files"] = {"results.json",  "cells.csv",        "per_network_means.csv", "timeseries.csv",
                "action_frequencies.csv", "alpha_gamma_grid.csv", "episodes.csv", "oracle.json"};
  std::ofstream os(out_dir / "manifest.json");
  os << j.dump(2) << '\n';
}

} // namespace wnql
