#pragma once

// Static world shared by every other module: geometry, the (channel, power)
// action space and the AP/STA deployment.

#include <cstddef>
#include <vector>

namespace wnql {

struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3D &, const Point3D &) = default;
};

/// Euclidean distance in meters.
double distance(const Point3D &p, const Point3D &q);

/// 1-based action index, matching the index convention of all reports.
using ActionIndex = int;

struct Action {
  int channel = 1;  // 1..C
  double tx_power_dbm = 0.0;

  friend bool operator==(const Action &, const Action &) = default;
};

/// Indexed (channel, transmit power) pairs shared by all agents.
///
/// Index order iterates channels fastest within each power level:
/// (ch1,p1), (ch2,p1), (ch1,p2), (ch2,p2), ...
class ActionSpace {
public:
  /// Throws std::invalid_argument on n_channels < 1, an empty or
  /// non-finite power list, or duplicated power levels.
  ActionSpace(int n_channels, std::vector<double> power_levels_dbm);

  int n_channels() const { return n_channels_; }
  const std::vector<double> &power_levels_dbm() const { return power_levels_dbm_; }
  int size() const { return n_channels_ * static_cast<int>(power_levels_dbm_.size()); }

  double max_power_dbm() const;
  double min_power_dbm() const;

  /// Throws std::out_of_range unless 1 <= k <= size().
  Action action_from_index(ActionIndex k) const;
  /// Throws std::invalid_argument when the channel or power is not part of
  /// the space. Powers match within 1e-9 dB.
  ActionIndex index_from_action(const Action &a) const;

  friend bool operator==(const ActionSpace &, const ActionSpace &) = default;

private:
  int n_channels_;
  std::vector<double> power_levels_dbm_;
};

struct MapDims {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// One AP transmitting downlink to a single STA.
struct WirelessNetwork {
  int id = 0;  // 1..n
  Point3D ap_position;
  Point3D sta_position;
};

class Deployment {
public:
  /// Validates: networks non-empty, ids contiguous from 1, every position
  /// finite and inside [0, map_dims], and no AP co-located with any STA.
  Deployment(MapDims map_dims, std::vector<WirelessNetwork> networks,
             ActionSpace action_space);

  const MapDims &map_dims() const { return map_dims_; }
  const std::vector<WirelessNetwork> &networks() const { return networks_; }
  const ActionSpace &action_space() const { return action_space_; }
  std::size_t size() const { return networks_.size(); }

private:
  MapDims map_dims_;
  std::vector<WirelessNetwork> networks_;
  ActionSpace action_space_;
};

/// Four networks on the quarter points of the x-z plane at mid-height, each
/// STA offset diagonally toward its nearest map corner so the AP-STA
/// distance equals `ap_sta_distance_m`.
std::vector<WirelessNetwork> grid_networks(const MapDims &map_dims,
                                           double ap_sta_distance_m);

/// 10x5x10 m map, 4 networks, 2 channels, powers {5,10,15,20} dBm,
/// AP-STA distance sqrt(2).
Deployment build_default_deployment();

/// Network relabeling induced by reflecting the map along x (x -> X-x)
/// and/or z (z -> Z-z). Entry i holds the 0-based image of network i; an
/// empty vector means the deployment is not invariant under the reflection.
std::vector<std::size_t> reflection_relabeling(const Deployment &dep,
                                               bool reflect_x, bool reflect_z,
                                               double tolerance_m = 1e-9);

} // namespace wnql
