#pragma once

#include "brute_force.hpp"

#include "wnql/channel.hpp"
#include "wnql/scenario.hpp"

#include <random>

namespace fixtures {

inline brute::World world_of(const wnql::ChannelModel &m) {
  brute::World w;
  const std::size_t n = m.size();
  w.loss_db.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      w.loss_db[i][j] = m.table().loss_db(i, j);
  for (int k = 1; k <= m.action_space().size(); ++k) {
    const auto a = m.action_space().action_from_index(k);
    w.actions.push_back({a.channel, a.tx_power_dbm});
  }
  w.bandwidth_hz = m.radio().bandwidth_hz;
  w.noise_dbm = m.radio().noise_dbm;
  w.leakage_db = m.radio().adjacent_leakage_db_per_channel;
  return w;
}

/// Random small world: n networks scattered in a 20 m cube, K = C x |powers|
/// with K <= 4, sampled shadowing.
inline wnql::ChannelModel random_small_model(std::mt19937_64 &gen, std::size_t n, int channels,
                                             std::vector<double> powers) {
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  const wnql::MapDims map{20.0, 20.0, 20.0};
  std::vector<wnql::WirelessNetwork> nets;
  for (std::size_t i = 0; i < n; ++i) {
    wnql::WirelessNetwork wn;
    wn.id = static_cast<int>(i) + 1;
    wn.ap_position = {coord(gen), coord(gen), coord(gen)};
    wn.sta_position = {coord(gen), coord(gen), coord(gen)};
    nets.push_back(wn);
  }
  const wnql::Deployment dep(map, nets, wnql::ActionSpace(channels, std::move(powers)));
  wnql::PathLossParams pl;
  pl.randomness_mode = wnql::RandomnessMode::sampled_per_link;
  pl.gs_std_db = 6.0;
  pl.go_halfwidth_db = 30.0;
  wnql::Engine rng = wnql::make_engine(gen(), wnql::Stream::shadowing);
  return wnql::make_channel_model(dep, pl, wnql::RadioConfig{}, rng);
}

inline wnql::ChannelModel default_model() { return wnql::Scenario{}.channel_model(); }

} // namespace fixtures
