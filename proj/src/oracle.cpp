#include "wnql/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wnql {

std::string to_string(Objective o) {
  return o == Objective::aggregate ? "aggregate" : "proportional-fairness";
}

std::uint64_t joint_space_size(std::size_t n, int k_actions, std::uint64_t guard) {
  if (n < 1 || k_actions < 1)
    throw std::invalid_argument("joint space: need n >= 1 and K >= 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > guard / static_cast<std::uint64_t>(k_actions))
      throw std::invalid_argument("joint space: K^n = " + std::to_string(k_actions) + "^" +
                                  std::to_string(n) + " exceeds the guard limit of " +
                                  std::to_string(guard) + " evaluations");
    total *= static_cast<std::uint64_t>(k_actions);
  }
  return total;
}

JointAction joint_action_at(std::uint64_t index, std::size_t n, int k_actions) {
  JointAction joint(n);
  const auto k = static_cast<std::uint64_t>(k_actions);
  for (std::size_t pos = n; pos-- > 0;) {
    joint[pos] = static_cast<ActionIndex>(index % k) + 1;
    index /= k;
  }
  return joint;
}

std::vector<JointAction> enumerate_joint(std::size_t n, int k_actions, std::uint64_t guard) {
  const std::uint64_t total = joint_space_size(n, k_actions, guard);
  std::vector<JointAction> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx)
    out.push_back(joint_action_at(idx, n, k_actions));
  return out;
}

double proportional_fairness_value(std::span<const double> throughputs_bps) {
  double sum = 0.0;
  for (const double v : throughputs_bps) {
    if (!(v > 0.0))
      return -std::numeric_limits<double>::infinity();
    sum += std::log(v);
  }
  return sum;
}

namespace {

double objective_value(Objective obj, std::span<const double> tp) {
  if (obj == Objective::aggregate) {
    double s = 0.0;
    for (const double v : tp)
      s += v;
    return s;
  }
  return proportional_fairness_value(tp);
}

bool within_tolerance(double v, double best) {
  return v >= best - kOracleTieTolerance * std::abs(best);
}

/// Running maximum with tie collection over a range of joint indices.
struct TieFold {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> ties;

  void offer(std::uint64_t index, double v) {
    if (!std::isfinite(v))
      return;
    if (v > best) {
      best = v;
      std::erase_if(ties, [&](const auto &c) { return !within_tolerance(c.second, best); });
    }
    if (within_tolerance(v, best))
      ties.emplace_back(index, v);
  }

  void merge(const TieFold &other) {
    best = std::max(best, other.best);
    ties.insert(ties.end(), other.ties.begin(), other.ties.end());
    std::erase_if(ties, [&](const auto &c) { return !within_tolerance(c.second, best); });
  }
};

void scan_range(const ChannelModel &model, Objective obj, std::uint64_t begin,
                std::uint64_t end, TieFold &fold) {
  const std::size_t n = model.size();
  const int k = model.action_space().size();
  std::vector<double> tp(n);
  JointAction joint = joint_action_at(begin, n, k);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    model.throughputs_bps(joint, tp);
    fold.offer(idx, objective_value(obj, tp));
    // Odometer increment, last position fastest.
    for (std::size_t pos = n; pos-- > 0;) {
      if (joint[pos] < k) {
        ++joint[pos];
        break;
      }
      joint[pos] = 1;
    }
  }
}

OracleResult finish(const ChannelModel &model, Objective obj, TieFold fold) {
  OracleResult res;
  res.objective = obj;
  if (fold.ties.empty()) {
    res.feasible = false;
    res.value = -std::numeric_limits<double>::infinity();
    return res;
  }
  std::sort(fold.ties.begin(), fold.ties.end());
  res.value = fold.best;
  const std::size_t n = model.size();
  const int k = model.action_space().size();
  for (const auto &[idx, v] : fold.ties) {
    res.maximizers.push_back(joint_action_at(idx, n, k));
    std::vector<double> tp(n);
    model.throughputs_bps(res.maximizers.back(), tp);
    res.per_network_throughput_bps.push_back(std::move(tp));
  }
  return res;
}

OracleResult search_serial(const ChannelModel &model, Objective obj, std::uint64_t guard) {
  const std::uint64_t total = joint_space_size(model.size(), model.action_space().size(), guard);
  TieFold fold;
  scan_range(model, obj, 0, total, fold);
  return finish(model, obj, std::move(fold));
}

OracleResult search_parallel(const ChannelModel &model, Objective obj, std::uint64_t guard) {
  const std::uint64_t total = joint_space_size(model.size(), model.action_space().size(), guard);
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  // One contiguous block per thread; the fold is merged in block order so
  // the result does not depend on scheduling.
  std::vector<TieFold> folds(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
#ifdef _OPENMP
    const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
    const auto nth = static_cast<std::uint64_t>(omp_get_num_threads());
#else
    const std::uint64_t tid = 0, nth = 1;
#endif
    const std::uint64_t begin = total * tid / nth;
    const std::uint64_t end = total * (tid + 1) / nth;
    scan_range(model, obj, begin, end, folds[tid]);
  }
  TieFold merged;
  for (const auto &f : folds)
    merged.merge(f);
  return finish(model, obj, std::move(merged));
}

} // namespace

OracleResult optimal_aggregate(const ChannelModel &model, std::uint64_t guard) {
  return search_parallel(model, Objective::aggregate, guard);
}

OracleResult optimal_proportional_fairness(const ChannelModel &model, std::uint64_t guard) {
  return search_parallel(model, Objective::proportional_fairness, guard);
}

namespace serial {

OracleResult optimal_aggregate(const ChannelModel &model, std::uint64_t guard) {
  return search_serial(model, Objective::aggregate, guard);
}

OracleResult optimal_proportional_fairness(const ChannelModel &model, std::uint64_t guard) {
  return search_serial(model, Objective::proportional_fairness, guard);
}

} // namespace serial

bool closed_under_relabeling(const std::vector<JointAction> &maximizers,
                             const std::vector<std::size_t> &image) {
  const std::set<JointAction> members(maximizers.begin(), maximizers.end());
  for (const auto &joint : maximizers) {
    if (image.size() != joint.size())
      return false;
    JointAction mapped(joint.size());
    for (std::size_t i = 0; i < joint.size(); ++i)
      mapped[image[i]] = joint[i];
    if (!members.contains(mapped))
      return false;
  }
  return true;
}

} // namespace wnql
