#pragma once

// Stateless Q-learning for one agent: epsilon-greedy selection with a
// decaying epsilon, and the discounted single-state value update.

#include "wnql/core_model.hpp"
#include "wnql/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wnql {

struct LearnerConfig {
  double alpha = 1.0;   // learning rate, (0, 1]
  double gamma = 0.95;  // discount, [0, 1)
  double eps0 = 1.0;    // initial exploration, [0, 1]

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Validated factory; prefer this over aggregate initialization at API edges.
LearnerConfig make_learner_config(double alpha, double gamma, double eps0);

/// Action-value estimates indexed by 1-based action index, all starting at 0.
class QTable {
public:
  explicit QTable(int n_actions);

  int size() const { return static_cast<int>(q_.size()); }
  double operator[](ActionIndex k) const { return q_[slot(k)]; }
  double &at(ActionIndex k) { return q_[slot(k)]; }
  double max() const;
  std::span<const double> values() const { return q_; }

  friend bool operator==(const QTable &, const QTable &) = default;

private:
  std::size_t slot(ActionIndex k) const;
  std::vector<double> q_;
};

/// min(1, eps0 / sqrt(t)); iterations count from t = 1.
double epsilon_at(std::uint64_t t, double eps0);

/// Epsilon-greedy choice. Draw order is fixed: one uniform01 coin first;
/// coin < eps explores with one uniform_index(K) draw, otherwise the
/// maximizers are collected and, only if there is more than one, a single
/// uniform_index(#maximizers) draw breaks the tie.
ActionIndex select_action(const QTable &q, double eps, Engine &rng);

/// q[k] += alpha (r + gamma max(q) - q[k]), the max taken over the whole
/// table before the write. Throws std::invalid_argument when r lies
/// outside [0, 1] or is not finite.
void update(QTable &q, ActionIndex k, double reward, const LearnerConfig &cfg);

/// One agent: config, table and its own exploration stream.
class StatelessQLearner {
public:
  StatelessQLearner(const LearnerConfig &cfg, int n_actions, Engine rng);

  ActionIndex act(std::uint64_t t);
  void learn(ActionIndex k, double reward) { update(q_, k, reward, cfg_); }

  const QTable &q_table() const { return q_; }
  const LearnerConfig &config() const { return cfg_; }

private:
  LearnerConfig cfg_;
  QTable q_;
  Engine rng_;
};

} // namespace wnql
