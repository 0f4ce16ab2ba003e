#pragma once

// Log-distance path loss with shadowing and obstacle terms, adjacent-channel
// leakage, SINR and Shannon throughput. All SINR arithmetic is linear (mW);
// dB and dBm only appear at the interfaces.

#include "wnql/core_model.hpp"
#include "wnql/random.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace wnql {

enum class RandomnessMode {
  deterministic_means,  // G_s and G_o fixed at their means
  sampled_per_link,     // one frozen draw per directed AP->STA link
};

struct PathLossParams {
  double pl0_db = 5.0;       // loss at 1 m
  double alpha_pl = 4.4;     // path-loss exponent
  double gs_mean_db = 9.5;   // shadowing, Normal(mean, std)
  double gs_std_db = 0.0;
  double go_mean_db = 30.0;  // obstacles, Uniform(mean - hw, mean + hw)
  double go_halfwidth_db = 0.0;
  double d_obs_m = 5.0;      // distance between two obstacles
  RandomnessMode randomness_mode = RandomnessMode::deterministic_means;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

struct RadioConfig {
  double bandwidth_hz = 20e6;
  double noise_dbm = -100.0;  // total in-band noise power
  double adjacent_leakage_db_per_channel = 20.0;

  void validate() const;
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

/// PL0 + 10 alpha log10(d) + gs + (d / d_obs) go, in dB. Throws on d <= 0.
double path_loss_db(double d_m, const PathLossParams &params, double gs_db, double go_db);

/// Frozen per-link losses: loss_db(i, j) is the loss from the AP of network
/// i to the STA of network j (0-based).
class LinkGainTable {
public:
  LinkGainTable(std::size_t n, std::vector<double> loss_db);

  std::size_t size() const { return n_; }
  double loss_db(std::size_t from_ap, std::size_t to_sta) const {
    return loss_db_[from_ap * n_ + to_sta];
  }
  std::span<const double> values() const { return loss_db_; }

private:
  std::size_t n_;
  std::vector<double> loss_db_;
};

/// Draws G_s ~ Normal and G_o ~ Uniform once per directed link in row-major
/// (AP, STA) order (G_s first, then G_o, per link);
/// in deterministic-means mode the stream is not touched.
LinkGainTable build_link_gain_table(const Deployment &dep, const PathLossParams &params,
                                    Engine &rng);

/// p / (i + n). Throws std::invalid_argument on n <= 0.
double sinr_linear(double p_mw, double i_mw, double n_mw);

/// B log2(1 + sinr).
double shannon_throughput_bps(const RadioConfig &radio, double sinr);

/// Joint actions carry one 1-based action index per network.
using JointAction = std::vector<ActionIndex>;

/// Power received at STA j from all other APs, leaked power attenuated per
/// unit of channel separation.
double interference_mw(std::size_t j, std::span<const ActionIndex> joint,
                       const LinkGainTable &table, const RadioConfig &radio,
                       const ActionSpace &space);

/// Throughput at maximum power without interference.
double max_throughput_bps(std::size_t i, const LinkGainTable &table,
                          const RadioConfig &radio, const ActionSpace &space);

/// Bundles the frozen table with the radio and action space so callers can
/// evaluate joint actions without re-threading every parameter.
class ChannelModel {
public:
  ChannelModel(LinkGainTable table, RadioConfig radio, ActionSpace space);

  std::size_t size() const { return table_.size(); }
  const LinkGainTable &table() const { return table_; }
  const RadioConfig &radio() const { return radio_; }
  const ActionSpace &action_space() const { return space_; }

  double received_mw(std::size_t j, ActionIndex k) const;
  double interference_mw(std::size_t j, std::span<const ActionIndex> joint) const;
  double throughput_bps(std::size_t j, std::span<const ActionIndex> joint) const;
  /// Writes every network's throughput into `out` (size n).
  void throughputs_bps(std::span<const ActionIndex> joint, std::span<double> out) const;
  double max_throughput_bps(std::size_t j) const { return max_throughput_bps_[j]; }

private:
  LinkGainTable table_;
  RadioConfig radio_;
  ActionSpace space_;
  double noise_mw_;
  std::vector<double> max_throughput_bps_;
};

/// Convenience: builds the table for a deployment and wraps it.
ChannelModel make_channel_model(const Deployment &dep, const PathLossParams &params,
                                const RadioConfig &radio, Engine &rng);

} // namespace wnql
