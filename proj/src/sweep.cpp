#include "wnql/sweep.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wnql {

void SweepSpec::validate() const {
  if (cells.empty())
    throw std::invalid_argument("sweep: no cells");
  for (const auto &c : cells)
    make_learner_config(c.alpha, c.gamma, c.eps0);
  if (iterations < 1)
    throw std::invalid_argument("sweep: iterations must be >= 1");
  if (window < 1 || window > iterations)
    throw std::invalid_argument("sweep: window must lie in 1..iterations");
  if (repetitions < 1)
    throw std::invalid_argument("sweep: repetitions must be >= 1");
}

std::vector<Cell> grid_cells(const std::vector<double> &alpha, const std::vector<double> &gamma,
                             const std::vector<double> &eps0) {
  if (alpha.empty() || gamma.empty() || eps0.empty())
    throw std::invalid_argument("sweep grid: every axis needs at least one value");
  std::vector<Cell> out;
  out.reserve(alpha.size() * gamma.size() * eps0.size());
  for (const double a : alpha)
    for (const double g : gamma)
      for (const double e : eps0)
        out.push_back({a, g, e});
  return out;
}

SweepSpec paper_corners_preset() {
  SweepSpec s;
  s.name = "paper-corners";
  s.cells = {{1.0, 0.95, 1.0}, {1.0, 0.95, 0.1}, {0.1, 0.05, 1.0}, {0.1, 0.05, 0.1}};
  return s;
}

SweepSpec paper_grid_preset() {
  std::vector<double> axis;
  for (int i = 1; i <= 20; ++i)
    axis.push_back(i / 20.0);  // nearest double to each decimal, as a file would spell it
  std::vector<double> gamma(axis.begin(), axis.end() - 1);
  SweepSpec s;
  s.name = "paper-grid";
  s.cells = grid_cells(axis, gamma, axis);
  s.record_timeseries = false;
  return s;
}

std::optional<SweepSpec> preset(const std::string &name) {
  if (name == "paper-corners")
    return paper_corners_preset();
  if (name == "paper-grid")
    return paper_grid_preset();
  return std::nullopt;
}

std::uint64_t episode_seed(std::uint64_t master_seed, const Cell &cell, std::size_t repetition) {
  return hash_words({master_seed, double_bits(cell.alpha), double_bits(cell.gamma),
                     double_bits(cell.eps0), static_cast<std::uint64_t>(repetition)});
}

int default_workers() {
  if (const char *env = std::getenv("WNQL_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0)
      return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::pair<double, double> mean_and_std(const std::vector<double> &values) {
  if (values.empty())
    return {0.0, 0.0};
  double mean = 0.0;
  for (const double v : values)
    mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1)
    return {mean, 0.0};
  double ss = 0.0;
  for (const double v : values)
    ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

namespace {

struct EpisodeOutput {
  EpisodeSummary summary;
  std::vector<std::vector<double>> timeseries;
};

EpisodeOutput run_one(const SweepSpec &spec, const Scenario &scenario,
                      const ChannelModel *shared_model, double shared_optimum,
                      std::size_t cell_index, std::size_t rep) {
  const Cell &cell = spec.cells[cell_index];
  const std::uint64_t seed = episode_seed(spec.master_seed, cell, rep);
  const LearnerConfig cfg = make_learner_config(cell.alpha, cell.gamma, cell.eps0);

  std::optional<ChannelModel> own_model;
  double optimum = shared_optimum;
  if (!shared_model) {
    own_model.emplace(scenario.channel_model(seed));
    optimum = serial::optimal_aggregate(*own_model).value;
  }
  const ChannelModel &model = shared_model ? *shared_model : *own_model;

  const SimulationTrace trace = run_episode(model, cfg, spec.iterations, seed);
  EpisodeOutput out;
  out.summary.repetition = rep;
  out.summary.seed = seed;
  out.summary.metrics = window_metrics(trace, spec.window);
  out.summary.optimum_aggregate_bps = optimum;
  if (spec.record_timeseries && rep == 0) {
    out.timeseries.reserve(trace.records.size());
    for (const auto &rec : trace.records)
      out.timeseries.push_back(rec.throughput_bps);
  }
  return out;
}

CellResult fold_cell(const Cell &cell, std::vector<EpisodeOutput> &episodes) {
  CellResult res;
  res.cell = cell;
  const std::size_t n = episodes.front().summary.metrics.mean_throughput_bps.size();
  const std::size_t k = episodes.front().summary.metrics.action_frequencies.front().size();
  res.mean_throughput_bps.assign(n, 0.0);
  res.mean_within_run_std_bps.assign(n, 0.0);
  res.mean_action_frequencies.assign(n, std::vector<double>(k, 0.0));

  std::vector<double> aggregates;
  double optimum = 0.0;
  for (auto &ep : episodes) {
    const auto &m = ep.summary.metrics;
    aggregates.push_back(m.mean_aggregate_bps);
    optimum += ep.summary.optimum_aggregate_bps;
    for (std::size_t i = 0; i < n; ++i) {
      res.mean_throughput_bps[i] += m.mean_throughput_bps[i];
      res.mean_within_run_std_bps[i] += m.std_throughput_bps[i];
      for (std::size_t a = 0; a < k; ++a)
        res.mean_action_frequencies[i][a] += m.action_frequencies[i][a];
    }
  }
  const double reps = static_cast<double>(episodes.size());
  std::tie(res.mean_aggregate_bps, res.std_aggregate_bps) = mean_and_std(aggregates);
  res.optimum_aggregate_bps = optimum / reps;
  for (std::size_t i = 0; i < n; ++i) {
    res.mean_throughput_bps[i] /= reps;
    res.mean_within_run_std_bps[i] /= reps;
    for (auto &f : res.mean_action_frequencies[i])
      f /= reps;
  }
  res.timeseries_bps = std::move(episodes.front().timeseries);
  for (auto &ep : episodes)
    res.episodes.push_back(std::move(ep.summary));
  return res;
}

} // namespace

SweepResult run_sweep(const SweepSpec &spec, const Scenario &scenario, Execution exec,
                      int workers) {
  spec.validate();

  SweepResult result;
  result.spec = spec;
  result.scenario_json = scenario_to_json(scenario);
  result.scenario_fingerprint = scenario_fingerprint(scenario);
  result.n_channels = scenario.deployment.action_space().n_channels();
  result.power_levels_dbm = scenario.deployment.action_space().power_levels_dbm();

  const ChannelModel reference = scenario.channel_model();
  const OracleResult agg = optimal_aggregate(reference);
  const OracleResult pf = optimal_proportional_fairness(reference);
  result.oracle_aggregate_bps = agg.value;
  result.oracle_proportional_fairness = pf.value;

  const bool fixed = scenario.shadowing_policy == ShadowingPolicy::fixed;
  const ChannelModel *shared = fixed ? &reference : nullptr;

  const std::size_t n_cells = spec.cells.size();
  const std::size_t total = n_cells * spec.repetitions;
  std::vector<EpisodeOutput> outputs(total);

  if (exec == Execution::serial) {
    for (std::size_t task = 0; task < total; ++task)
      outputs[task] = run_one(spec, scenario, shared, agg.value, task / spec.repetitions,
                              task % spec.repetitions);
  } else {
    const int threads = workers > 0 ? workers : default_workers();
    // Exceptions must not escape an OpenMP region; keep the first one.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t task = 0; task < static_cast<std::int64_t>(total); ++task) {
      try {
        const auto t = static_cast<std::size_t>(task);
        outputs[t] = run_one(spec, scenario, shared, agg.value, t / spec.repetitions,
                             t % spec.repetitions);
      } catch (...) {
#pragma omp critical(wnql_sweep_failure)
        if (!failure)
          failure = std::current_exception();
      }
    }
    if (failure)
      std::rethrow_exception(failure);
  }

  for (std::size_t c = 0; c < n_cells; ++c) {
    std::vector<EpisodeOutput> batch;
    batch.reserve(spec.repetitions);
    for (std::size_t r = 0; r < spec.repetitions; ++r)
      batch.push_back(std::move(outputs[c * spec.repetitions + r]));
    result.cells.push_back(fold_cell(spec.cells[c], batch));
  }
  return result;
}

namespace {

using nlohmann::json;

[[noreturn]] void sweep_fail(const std::string &source, const std::string &where,
                             const std::string &msg) {
  throw ScenarioError(source, where, msg);
}

std::vector<double> number_list(const json &v, const std::string &source,
                                const std::string &where) {
  if (!v.is_array() || v.empty())
    sweep_fail(source, where, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      sweep_fail(source, where + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::uint64_t count(const json &doc, const char *key, const std::string &source,
                    std::uint64_t fallback) {
  if (!doc.contains(key))
    return fallback;
  const auto &v = doc[key];
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    sweep_fail(source, std::string("/") + key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

} // namespace

SweepFile parse_sweep_file(const std::string &text, const std::filesystem::path &base_dir,
                           const std::string &source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    sweep_fail(source, "byte " + std::to_string(e.byte), "syntax error");
  }
  if (!doc.is_object())
    sweep_fail(source, "/", "expected an object");
  for (const auto &[key, value] : doc.items()) {
    static const std::set<std::string> allowed{
        "schema", "name", "description", "scenario", "preset", "grid", "cells",
        "iterations", "window", "repetitions", "master_seed", "timeseries"};
    if (!allowed.contains(key))
      sweep_fail(source, "/" + key, "unknown key");
  }
  if (!doc.contains("schema") || doc["schema"] != "wnql-sweep/1")
    sweep_fail(source, "/schema", "expected \"wnql-sweep/1\"");

  const int layouts = doc.contains("preset") + doc.contains("grid") + doc.contains("cells");
  if (layouts != 1)
    sweep_fail(source, "/", "exactly one of \"preset\", \"grid\" or \"cells\" is required");

  SweepFile out;
  SweepSpec &spec = out.spec;
  if (doc.contains("preset")) {
    const auto name = doc["preset"].is_string() ? doc["preset"].get<std::string>() : "";
    auto p = preset(name);
    if (!p)
      sweep_fail(source, "/preset", "unknown preset \"" + name + "\"");
    spec = *p;
  } else if (doc.contains("grid")) {
    const auto &g = doc["grid"];
    if (!g.is_object() || !g.contains("alpha") || !g.contains("gamma") || !g.contains("eps0"))
      sweep_fail(source, "/grid", "needs \"alpha\", \"gamma\" and \"eps0\" lists");
    spec.cells = grid_cells(number_list(g["alpha"], source, "/grid/alpha"),
                            number_list(g["gamma"], source, "/grid/gamma"),
                            number_list(g["eps0"], source, "/grid/eps0"));
  } else {
    const auto &cells = doc["cells"];
    if (!cells.is_array() || cells.empty())
      sweep_fail(source, "/cells", "expected a non-empty list");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string w = "/cells/" + std::to_string(i);
      const auto &c = cells[i];
      for (const char *key : {"alpha", "gamma", "eps0"})
        if (!c.is_object() || !c.contains(key) || !c[key].is_number())
          sweep_fail(source, w + "/" + key, "expected a number");
      spec.cells.push_back({c["alpha"].get<double>(), c["gamma"].get<double>(),
                            c["eps0"].get<double>()});
    }
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      sweep_fail(source, "/name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  spec.iterations = count(doc, "iterations", source, spec.iterations);
  spec.window = count(doc, "window", source, spec.window);
  spec.repetitions = count(doc, "repetitions", source, spec.repetitions);
  spec.master_seed = count(doc, "master_seed", source, spec.master_seed);
  if (doc.contains("timeseries")) {
    if (!doc["timeseries"].is_boolean())
      sweep_fail(source, "/timeseries", "expected true or false");
    spec.record_timeseries = doc["timeseries"].get<bool>();
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument &e) {
    sweep_fail(source, "/", e.what());
  }

  if (doc.contains("scenario")) {
    if (!doc["scenario"].is_string())
      sweep_fail(source, "/scenario", "expected a file path");
    const std::filesystem::path p = base_dir / doc["scenario"].get<std::string>();
    out.scenario = load_scenario(p);
    out.scenario_source = p.string();
  } else {
    out.scenario_source = "built-in default";
  }
  return out;
}

SweepFile load_sweep_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ScenarioError(path.string(), "/", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_file(buf.str(), path.parent_path(), path.string());
}

} // namespace wnql
