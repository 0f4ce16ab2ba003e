#pragma once

// One seeded simulation run: every iteration draws a random play order, each
// network moves in turn, is rewarded against the joint action as it stands
// right after its move, and updates its own Q-table.

#include "wnql/channel.hpp"
#include "wnql/learner.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wnql {

struct IterationRecord {
  std::uint64_t t = 0;
  std::vector<int> order;  // 1-based network ids in play order
  JointAction actions;     // end of iteration
  std::vector<double> throughput_bps;
  std::vector<double> reward;
};

struct SimulationTrace {
  LearnerConfig config;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  int n_actions = 0;
  std::vector<IterationRecord> records;
  std::vector<QTable> final_q;

  std::size_t n_networks() const { return final_q.size(); }
};

/// Throughput of i under `joint` relative to its interference-free maximum;
/// 0 when that maximum is 0.
double compute_reward(std::size_t i, std::span<const ActionIndex> joint,
                      const ChannelModel &model);

/// Runs against a fixed channel realization. All randomness derives from
/// `seed`: one permutation stream, one initialization stream and one
/// exploration stream per network.
SimulationTrace run_episode(const ChannelModel &model, const LearnerConfig &cfg,
                            std::uint64_t iterations, std::uint64_t seed);

/// Same, drawing the link table from the seed's shadowing stream first.
SimulationTrace run_episode(const Deployment &dep, const PathLossParams &pl,
                            const RadioConfig &radio, const LearnerConfig &cfg,
                            std::uint64_t iterations, std::uint64_t seed);

struct WindowMetrics {
  std::size_t window = 0;
  double mean_aggregate_bps = 0.0;
  std::vector<double> mean_throughput_bps;  // per network
  std::vector<double> std_throughput_bps;   // per network, within the window
  std::vector<std::vector<double>> action_frequencies;  // [network][k-1]
};

/// Statistics over the last `window` iterations. Throws
/// std::invalid_argument when window is 0 or exceeds the trace length.
WindowMetrics window_metrics(const SimulationTrace &trace, std::size_t window);

/// Trace export, schema "wnql-trace/1": comment header lines starting with
/// '#', then a CSV header and one row per iteration with columns
/// t, order, action_1..n, throughput_bps_1..n, reward_1..n. `order` is the
/// play order joined by '-'.
void write_trace_csv(std::ostream &os, const SimulationTrace &trace);

/// Final Q-tables, schema "wnql-qtable/1": network, action, q.
void write_qtable_csv(std::ostream &os, const SimulationTrace &trace);

} // namespace wnql
