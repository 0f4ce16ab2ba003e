#include "wnql/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wnql {

double distance(const Point3D &p, const Point3D &q) {
  return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z);
}

ActionSpace::ActionSpace(int n_channels, std::vector<double> power_levels_dbm)
    : n_channels_(n_channels), power_levels_dbm_(std::move(power_levels_dbm)) {
  if (n_channels_ < 1)
    throw std::invalid_argument("action space: n_channels must be >= 1");
  if (power_levels_dbm_.empty())
    throw std::invalid_argument("action space: power level list is empty");
  for (std::size_t i = 0; i < power_levels_dbm_.size(); ++i) {
    if (!std::isfinite(power_levels_dbm_[i]))
      throw std::invalid_argument("action space: non-finite power level");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(power_levels_dbm_[i] - power_levels_dbm_[j]) <= 1e-9)
        throw std::invalid_argument("action space: duplicated power level " +
                                    std::to_string(power_levels_dbm_[i]));
  }
}

double ActionSpace::max_power_dbm() const {
  return *std::max_element(power_levels_dbm_.begin(), power_levels_dbm_.end());
}

double ActionSpace::min_power_dbm() const {
  return *std::min_element(power_levels_dbm_.begin(), power_levels_dbm_.end());
}

Action ActionSpace::action_from_index(ActionIndex k) const {
  if (k < 1 || k > size())
    throw std::out_of_range("action index " + std::to_string(k) +
                            " outside 1.." + std::to_string(size()));
  const int zero_based = k - 1;
  return Action{zero_based % n_channels_ + 1,
                power_levels_dbm_[static_cast<std::size_t>(zero_based / n_channels_)]};
}

ActionIndex ActionSpace::index_from_action(const Action &a) const {
  if (a.channel < 1 || a.channel > n_channels_)
    throw std::invalid_argument("channel " + std::to_string(a.channel) +
                                " outside 1.." + std::to_string(n_channels_));
  for (std::size_t p = 0; p < power_levels_dbm_.size(); ++p)
    if (std::abs(power_levels_dbm_[p] - a.tx_power_dbm) <= 1e-9)
      return static_cast<int>(p) * n_channels_ + a.channel;
  throw std::invalid_argument("transmit power " + std::to_string(a.tx_power_dbm) +
                              " dBm is not a configured level");
}

namespace {

bool finite(const Point3D &p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

bool inside(const Point3D &p, const MapDims &m) {
  return p.x >= 0.0 && p.x <= m.x && p.y >= 0.0 && p.y <= m.y && p.z >= 0.0 &&
         p.z <= m.z;
}

} // namespace

Deployment::Deployment(MapDims map_dims, std::vector<WirelessNetwork> networks,
                       ActionSpace action_space)
    : map_dims_(map_dims), networks_(std::move(networks)),
      action_space_(std::move(action_space)) {
  if (!(map_dims_.x > 0.0 && map_dims_.y > 0.0 && map_dims_.z > 0.0) ||
      !std::isfinite(map_dims_.x) || !std::isfinite(map_dims_.y) ||
      !std::isfinite(map_dims_.z))
    throw std::invalid_argument("deployment: map dimensions must be positive and finite");
  if (networks_.empty())
    throw std::invalid_argument("deployment: no networks");
  for (std::size_t i = 0; i < networks_.size(); ++i) {
    const auto &wn = networks_[i];
    const std::string label = "deployment: network " + std::to_string(i + 1);
    if (wn.id != static_cast<int>(i) + 1)
      throw std::invalid_argument(label + " has id " + std::to_string(wn.id) +
                                  " (ids must be contiguous from 1)");
    if (!finite(wn.ap_position) || !finite(wn.sta_position))
      throw std::invalid_argument(label + " has a non-finite coordinate");
    if (!inside(wn.ap_position, map_dims_) || !inside(wn.sta_position, map_dims_))
      throw std::invalid_argument(label + " lies outside the map");
  }
  // Every directed AP->STA link needs a positive distance for the path loss.
  for (const auto &tx : networks_)
    for (const auto &rx : networks_)
      if (distance(tx.ap_position, rx.sta_position) <= 0.0)
        throw std::invalid_argument("deployment: AP " + std::to_string(tx.id) +
                                    " is co-located with STA " +
                                    std::to_string(rx.id));
}

std::vector<WirelessNetwork> grid_networks(const MapDims &map_dims,
                                           double ap_sta_distance_m) {
  const double offset = ap_sta_distance_m / std::sqrt(2.0);
  const double y = map_dims.y / 2.0;
  const double xs[2] = {map_dims.x / 4.0, 3.0 * map_dims.x / 4.0};
  const double zs[2] = {map_dims.z / 4.0, 3.0 * map_dims.z / 4.0};
  // Outward means toward the nearest corner: -1 on the low side, +1 on the high.
  const double dir[2] = {-1.0, 1.0};

  std::vector<WirelessNetwork> out;
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 2; ++col) {
      WirelessNetwork wn;
      wn.id = static_cast<int>(out.size()) + 1;
      wn.ap_position = {xs[col], y, zs[row]};
      wn.sta_position = {xs[col] + dir[col] * offset, y, zs[row] + dir[row] * offset};
      out.push_back(wn);
    }
  }
  return out;
}

Deployment build_default_deployment() {
  const MapDims map{10.0, 5.0, 10.0};
  return Deployment(map, grid_networks(map, std::sqrt(2.0)),
                    ActionSpace(2, {5.0, 10.0, 15.0, 20.0}));
}

std::vector<std::size_t> reflection_relabeling(const Deployment &dep,
                                               bool reflect_x, bool reflect_z,
                                               double tolerance_m) {
  const auto &m = dep.map_dims();
  auto reflect = [&](const Point3D &p) {
    return Point3D{reflect_x ? m.x - p.x : p.x, p.y, reflect_z ? m.z - p.z : p.z};
  };
  const auto &nets = dep.networks();
  std::vector<std::size_t> image(nets.size());
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const Point3D ap = reflect(nets[i].ap_position);
    const Point3D sta = reflect(nets[i].sta_position);
    bool found = false;
    for (std::size_t j = 0; j < nets.size() && !found; ++j) {
      if (distance(ap, nets[j].ap_position) <= tolerance_m &&
          distance(sta, nets[j].sta_position) <= tolerance_m) {
        image[i] = j;
        found = true;
      }
    }
    if (!found)
      return {};
  }
  return image;
}

} // namespace wnql
