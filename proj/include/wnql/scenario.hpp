#pragma once

// Scenario files: the deployment, action space and channel-engine
// parameters in one JSON document (schema "wnql-scenario/1").
//
//   {
//     "schema": "wnql-scenario/1",
//     "map_dims_m": [10, 5, 10],
//     "ap_sta_distance_m": 1.4142135623730951,     optional
//     "networks": [{"ap": [x,y,z], "sta": [x,y,z]}, ...],   optional
//     "n_channels": 2,
//     "power_levels_dbm": [5, 10, 15, 20],
//     "path_loss": {"pl0_db": 5, "alpha_pl": 4.4, "gs_mean_db": 9.5,
//                   "gs_std_db": 0, "go_mean_db": 30, "go_halfwidth_db": 0,
//                   "d_obs_m": 5, "randomness_mode": "deterministic-means"},
//     "radio": {"bandwidth_hz": 2e7, "noise_dbm": -100,
//               "adjacent_leakage_db_per_channel": 20},
//     "shadowing": {"policy": "fixed", "seed": 1}
//   }
//
// Without "networks" the four-network grid generator is used. Every key of
// "path_loss", "radio" and "shadowing" is optional and defaults to the
// values above.

#include "wnql/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace wnql {

/// Whether the G_s / G_o realization is shared by every run of a scenario
/// or redrawn from each run's own seed.
enum class ShadowingPolicy { fixed, per_run };

struct Scenario {
  Deployment deployment = build_default_deployment();
  PathLossParams path_loss;
  RadioConfig radio;
  ShadowingPolicy shadowing_policy = ShadowingPolicy::fixed;
  std::uint64_t shadowing_seed = 1;

  /// Channel model for one run. Under the fixed policy the run seed is
  /// ignored and the realization comes from shadowing_seed.
  ChannelModel channel_model(std::uint64_t run_seed = 0) const;
};

/// Scenario errors carry where in the document the fault is: a JSON pointer
/// such as "/path_loss/d_obs_m", or "line L, column C" for syntax errors.
class ScenarioError : public std::runtime_error {
public:
  ScenarioError(const std::string &source, const std::string &location,
                const std::string &message);

  const std::string &location() const { return location_; }

private:
  std::string location_;
};

Scenario parse_scenario(const std::string &text, const std::string &source = "<scenario>");
Scenario load_scenario(const std::filesystem::path &path);

/// Canonical JSON (sorted keys, explicit defaults) of a scenario; two
/// scenarios are the same world iff their canonical forms are equal.
std::string scenario_to_json(const Scenario &scenario);

/// Stable fingerprint of the canonical form, as 16 hex digits.
std::string scenario_fingerprint(const Scenario &scenario);

std::string to_string(RandomnessMode mode);
std::string to_string(ShadowingPolicy policy);

} // namespace wnql
