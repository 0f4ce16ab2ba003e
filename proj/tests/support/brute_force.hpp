#pragma once

// Test-only reference evaluator. Recomputes every throughput from a raw loss
// matrix with its own unit conversions and nested loops, sharing no code
// with the channel engine or the oracle.

#include <cmath>
#include <cstddef>
#include <vector>

namespace brute {

struct Link {
  int channel;
  double power_dbm;
};

struct World {
  std::vector<std::vector<double>> loss_db;  // [ap][sta]
  std::vector<Link> actions;                 // index k-1
  double bandwidth_hz;
  double noise_dbm;
  double leakage_db;
};

inline double to_linear(double db) { return std::exp(db * std::log(10.0) / 10.0); }

inline std::vector<double> throughputs(const World &w, const std::vector<int> &joint) {
  const std::size_t n = joint.size();
  std::vector<double> out(n);
  for (std::size_t rx = 0; rx < n; ++rx) {
    const Link own = w.actions[joint[rx] - 1];
    const double signal = to_linear(own.power_dbm - w.loss_db[rx][rx]);
    double interference = 0.0;
    for (std::size_t tx = 0; tx < n; ++tx) {
      if (tx == rx)
        continue;
      const Link other = w.actions[joint[tx] - 1];
      const double sep = std::fabs(double(other.channel - own.channel));
      interference += to_linear(other.power_dbm - w.loss_db[tx][rx] - w.leakage_db * sep);
    }
    out[rx] = w.bandwidth_hz * std::log(1.0 + signal / (interference + to_linear(w.noise_dbm))) /
              std::log(2.0);
  }
  return out;
}

struct Best {
  double aggregate = -1.0;
  double log_sum = -INFINITY;
};

/// Recursive nested loops over every joint action.
inline void search(const World &w, std::vector<int> &joint, std::size_t depth, Best &best) {
  if (depth == joint.size()) {
    const auto tp = throughputs(w, joint);
    double sum = 0.0, logs = 0.0;
    bool starved = false;
    for (const double v : tp) {
      sum += v;
      if (v <= 0.0)
        starved = true;
      else
        logs += std::log(v);
    }
    best.aggregate = std::max(best.aggregate, sum);
    if (!starved)
      best.log_sum = std::max(best.log_sum, logs);
    return;
  }
  for (int k = 1; k <= int(w.actions.size()); ++k) {
    joint[depth] = k;
    search(w, joint, depth + 1, best);
  }
}

inline Best exhaustive(const World &w) {
  Best best;
  std::vector<int> joint(w.loss_db.size(), 1);
  search(w, joint, 0, best);
  return best;
}

} // namespace brute
