#pragma once

// Persisted artifacts: sweep results, oracle tables and the figure-ready
// datasets consumed by the plotting scripts.
//
// Every CSV dataset starts with a "# schema: <name>/<version>" line followed
// by a header row. Datasets written by write_report:
//   cells.csv               wnql-cells/1       one row per cell
//   per_network_means.csv   wnql-per-network/1 per cell and network
//   timeseries.csv          wnql-timeseries/1  repetition 0, per iteration
//   action_frequencies.csv  wnql-actions/1     per cell, network and action
//   alpha_gamma_grid.csv    wnql-grid/1        mean and std per (eps0, alpha, gamma)
//   episodes.csv            wnql-episodes/1    per-episode window means and seeds
//   oracle.json                                both optima

#include "wnql/oracle.hpp"
#include "wnql/sweep.hpp"

#include <filesystem>
#include <string>

namespace wnql {

struct OraclePair {
  std::string scenario_fingerprint;
  OracleResult aggregate;
  OracleResult proportional_fairness;
};

/// Both optima on the scenario's reference realization.
OraclePair compute_oracles(const Scenario &scenario);

/// Table with one row per network and one column per objective. The first
/// maximizer is shown, the others follow in parentheses.
std::string oracle_table(const OraclePair &oracles);

std::string oracle_to_json(const OraclePair &oracles, const ActionSpace &space);
OraclePair oracle_from_json(const std::string &text);

std::string results_to_json(const SweepResult &result);
SweepResult results_from_json(const std::string &text);

/// Writes the datasets above into out_dir (created if needed). Throws
/// std::invalid_argument when the oracle belongs to another scenario.
void write_report(const SweepResult &result, const OraclePair &oracles,
                  const std::filesystem::path &out_dir);

/// manifest.json: inputs, seeds and code version.
void write_manifest(const SweepResult &result, const std::string &scenario_source,
                    const std::filesystem::path &out_dir);

/// Project version baked in at configure time.
std::string code_version();

} // namespace wnql
