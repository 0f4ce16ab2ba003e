#include "wnql/channel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace wnql {

void PathLossParams::validate() const {
  auto fail = [](const std::string &what) {
    throw std::invalid_argument("path loss: " + what);
  };
  if (!std::isfinite(pl0_db) || !std::isfinite(gs_mean_db) || !std::isfinite(go_mean_db))
    fail("non-finite parameter");
  if (!(alpha_pl > 0.0) || !std::isfinite(alpha_pl))
    fail("alpha_pl must be > 0");
  if (!(d_obs_m > 0.0) || !std::isfinite(d_obs_m))
    fail("d_obs must be > 0");
  if (!(gs_std_db >= 0.0) || !std::isfinite(gs_std_db))
    fail("gs_std must be >= 0");
  if (!(go_halfwidth_db >= 0.0) || !std::isfinite(go_halfwidth_db))
    fail("go_halfwidth must be >= 0");
}

void RadioConfig::validate() const {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
    throw std::invalid_argument("radio: bandwidth must be > 0");
  if (!std::isfinite(noise_dbm))
    throw std::invalid_argument("radio: noise level must be finite");
  if (!(adjacent_leakage_db_per_channel >= 0.0) ||
      !std::isfinite(adjacent_leakage_db_per_channel))
    throw std::invalid_argument("radio: adjacent leakage must be >= 0");
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double path_loss_db(double d_m, const PathLossParams &params, double gs_db, double go_db) {
  if (!(d_m > 0.0))
    throw std::invalid_argument("path loss: distance must be > 0 (got " +
                                std::to_string(d_m) + " m)");
  return params.pl0_db + 10.0 * params.alpha_pl * std::log10(d_m) + gs_db +
         (d_m / params.d_obs_m) * go_db;
}

LinkGainTable::LinkGainTable(std::size_t n, std::vector<double> loss_db)
    : n_(n), loss_db_(std::move(loss_db)) {
  if (n_ == 0 || loss_db_.size() != n_ * n_)
    throw std::invalid_argument("link gain table: expected n*n entries");
  for (const double v : loss_db_)
    if (!std::isfinite(v))
      throw std::invalid_argument("link gain table: non-finite entry");
}

LinkGainTable build_link_gain_table(const Deployment &dep, const PathLossParams &params,
                                    Engine &rng) {
  params.validate();
  const auto &nets = dep.networks();
  const std::size_t n = nets.size();
  const bool sampled = params.randomness_mode == RandomnessMode::sampled_per_link;

  std::vector<double> loss(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double gs = params.gs_mean_db;
      double go = params.go_mean_db;
      if (sampled) {
        gs += params.gs_std_db * standard_normal(rng);
        go += params.go_halfwidth_db * (2.0 * uniform01(rng) - 1.0);
      }
      const double d = distance(nets[i].ap_position, nets[j].sta_position);
      loss[i * n + j] = path_loss_db(d, params, gs, go);
    }
  }
  return LinkGainTable(n, std::move(loss));
}

double sinr_linear(double p_mw, double i_mw, double n_mw) {
  if (!(n_mw > 0.0))
    throw std::invalid_argument("sinr: noise power must be > 0");
  return p_mw / (i_mw + n_mw);
}

double shannon_throughput_bps(const RadioConfig &radio, double sinr) {
  return radio.bandwidth_hz * std::log2(1.0 + sinr);
}

double interference_mw(std::size_t j, std::span<const ActionIndex> joint,
                       const LinkGainTable &table, const RadioConfig &radio,
                       const ActionSpace &space) {
  const Action own = space.action_from_index(joint[j]);
  double total = 0.0;
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (i == j)
      continue;
    const Action other = space.action_from_index(joint[i]);
    const int separation = std::abs(other.channel - own.channel);
    total += dbm_to_mw(other.tx_power_dbm - table.loss_db(i, j) -
                       radio.adjacent_leakage_db_per_channel * separation);
  }
  return total;
}

double max_throughput_bps(std::size_t i, const LinkGainTable &table,
                          const RadioConfig &radio, const ActionSpace &space) {
  const double p = dbm_to_mw(space.max_power_dbm() - table.loss_db(i, i));
  return shannon_throughput_bps(radio, sinr_linear(p, 0.0, dbm_to_mw(radio.noise_dbm)));
}

ChannelModel::ChannelModel(LinkGainTable table, RadioConfig radio, ActionSpace space)
    : table_(std::move(table)), radio_(radio), space_(std::move(space)) {
  radio_.validate();
  noise_mw_ = dbm_to_mw(radio_.noise_dbm);
  max_throughput_bps_.resize(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i)
    max_throughput_bps_[i] = wnql::max_throughput_bps(i, table_, radio_, space_);
}

double ChannelModel::received_mw(std::size_t j, ActionIndex k) const {
  return dbm_to_mw(space_.action_from_index(k).tx_power_dbm - table_.loss_db(j, j));
}

double ChannelModel::interference_mw(std::size_t j,
                                     std::span<const ActionIndex> joint) const {
  return wnql::interference_mw(j, joint, table_, radio_, space_);
}

double ChannelModel::throughput_bps(std::size_t j, std::span<const ActionIndex> joint) const {
  const double sinr = sinr_linear(received_mw(j, joint[j]), interference_mw(j, joint), noise_mw_);
  return shannon_throughput_bps(radio_, sinr);
}

void ChannelModel::throughputs_bps(std::span<const ActionIndex> joint,
                                   std::span<double> out) const {
  for (std::size_t j = 0; j < joint.size(); ++j)
    out[j] = throughput_bps(j, joint);
}

ChannelModel make_channel_model(const Deployment &dep, const PathLossParams &params,
                                const RadioConfig &radio, Engine &rng) {
  return ChannelModel(build_link_gain_table(dep, params, rng), radio, dep.action_space());
}

} // namespace wnql
