#pragma once

// Exhaustive search over the joint action space for the aggregate-throughput
// and proportional-fairness optima.
//
// The default entry points partition the lexicographic enumeration across
// OpenMP threads; wnql::serial keeps the single-threaded reference. Both
// fold ties the same way and return identical results.

#include "wnql/channel.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wnql {

enum class Objective { aggregate, proportional_fairness };

std::string to_string(Objective o);

inline constexpr std::uint64_t kDefaultOracleGuard = 10'000'000;
inline constexpr double kOracleTieTolerance = 1e-9;

struct OracleResult {
  Objective objective = Objective::aggregate;
  /// False only for proportional fairness when every joint action starves
  /// some network; maximizers are then empty and value is -inf.
  bool feasible = true;
  double value = 0.0;
  std::vector<JointAction> maximizers;  // lexicographic order
  std::vector<std::vector<double>> per_network_throughput_bps;  // per maximizer
};

/// K^n, or throws std::invalid_argument when it exceeds `guard`.
std::uint64_t joint_space_size(std::size_t n, int k_actions,
                               std::uint64_t guard = kDefaultOracleGuard);

/// Lexicographic decoding: position 0 is the most significant digit.
JointAction joint_action_at(std::uint64_t index, std::size_t n, int k_actions);

/// All K^n joint actions, lexicographic. Guarded like joint_space_size.
std::vector<JointAction> enumerate_joint(std::size_t n, int k_actions,
                                         std::uint64_t guard = kDefaultOracleGuard);

/// Sum of log throughputs (natural log), -inf when any throughput is 0.
double proportional_fairness_value(std::span<const double> throughputs_bps);

OracleResult optimal_aggregate(const ChannelModel &model,
                               std::uint64_t guard = kDefaultOracleGuard);
OracleResult optimal_proportional_fairness(const ChannelModel &model,
                                           std::uint64_t guard = kDefaultOracleGuard);

namespace serial {

OracleResult optimal_aggregate(const ChannelModel &model,
                               std::uint64_t guard = kDefaultOracleGuard);
OracleResult optimal_proportional_fairness(const ChannelModel &model,
                                           std::uint64_t guard = kDefaultOracleGuard);

} // namespace serial

/// Maps each maximizer through a network relabeling (image[i] = new slot of
/// network i) and reports whether the set is closed under it.
bool closed_under_relabeling(const std::vector<JointAction> &maximizers,
                             const std::vector<std::size_t> &image);

} // namespace wnql
