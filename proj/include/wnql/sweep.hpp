#pragma once

// Repetition batches per (alpha, gamma, eps0) cell and their statistics.

#include "wnql/arena.hpp"
#include "wnql/oracle.hpp"
#include "wnql/scenario.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wnql {

struct Cell {
  double alpha = 1.0;
  double gamma = 0.95;
  double eps0 = 1.0;

  friend bool operator==(const Cell &, const Cell &) = default;
};

struct SweepSpec {
  std::string name = "custom";
  /// Evaluated in list order. grid_cells() builds the usual product.
  std::vector<Cell> cells;
  std::uint64_t iterations = 10000;
  std::size_t window = 5000;
  std::size_t repetitions = 100;
  std::uint64_t master_seed = 1;
  /// Keep the per-iteration throughputs of repetition 0 of every cell.
  bool record_timeseries = true;

  void validate() const;
};

/// alpha outermost, then gamma, then eps0. Throws on an empty axis.
std::vector<Cell> grid_cells(const std::vector<double> &alpha, const std::vector<double> &gamma,
                             const std::vector<double> &eps0);

/// Cells shown in the single-run figures: (eps0, alpha, gamma) in
/// {(1,1,0.95), (0.1,1,0.95), (1,0.1,0.05), (0.1,0.1,0.05)}.
SweepSpec paper_corners_preset();
/// alpha, gamma, eps0 in {0.05, 0.1, ..., 1.0}, excluding gamma = 1.
SweepSpec paper_grid_preset();
std::optional<SweepSpec> preset(const std::string &name);

/// Pure function of (master seed, cell coordinates, repetition).
std::uint64_t episode_seed(std::uint64_t master_seed, const Cell &cell, std::size_t repetition);

struct EpisodeSummary {
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  WindowMetrics metrics;
  double optimum_aggregate_bps = 0.0;  // oracle value of this run's channel
};

struct CellResult {
  Cell cell;
  double mean_aggregate_bps = 0.0;
  double std_aggregate_bps = 0.0;  // over repetitions (n - 1 denominator)
  double optimum_aggregate_bps = 0.0;  // mean of the episodes' optima
  std::vector<double> mean_throughput_bps;       // per network
  std::vector<double> mean_within_run_std_bps;   // per network
  std::vector<std::vector<double>> mean_action_frequencies;  // [network][k-1]
  std::vector<EpisodeSummary> episodes;  // repetition order
  /// Repetition 0, [t-1][network], when recorded.
  std::vector<std::vector<double>> timeseries_bps;
};

struct SweepResult {
  SweepSpec spec;
  std::string scenario_json;
  std::string scenario_fingerprint;
  int n_channels = 0;
  std::vector<double> power_levels_dbm;
  /// Oracle values of the scenario's reference realization.
  double oracle_aggregate_bps = 0.0;
  double oracle_proportional_fairness = 0.0;
  std::vector<CellResult> cells;
};

enum class Execution { serial, parallel };

/// Worker count from WNQL_WORKERS, else the OpenMP default.
int default_workers();

/// Every episode of every cell; aggregation folds in (cell, repetition)
/// order so the result is independent of the worker count.
SweepResult run_sweep(const SweepSpec &spec, const Scenario &scenario,
                      Execution exec = Execution::parallel, int workers = 0);

/// Mean and sample standard deviation (0 for a single value).
std::pair<double, double> mean_and_std(const std::vector<double> &values);

/// Sweep spec files, schema "wnql-sweep/1":
///   {"schema": "wnql-sweep/1", "name": "...", "scenario": "default.json",
///    "preset": "paper-corners"   or
///    "grid": {"alpha": [...], "gamma": [...], "eps0": [...]}   or
///    "cells": [{"alpha": 1, "gamma": 0.95, "eps0": 1}, ...],
///    "iterations": 10000, "window": 5000, "repetitions": 100,
///    "master_seed": 1, "timeseries": true}
/// "scenario" resolves relative to the spec file and defaults to the
/// built-in default scenario.
struct SweepFile {
  SweepSpec spec;
  Scenario scenario;
  std::string scenario_source;
};

SweepFile parse_sweep_file(const std::string &text, const std::filesystem::path &base_dir,
                           const std::string &source = "<sweep>");
SweepFile load_sweep_file(const std::filesystem::path &path);

} // namespace wnql
