#include "wnql/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wnql {

void LearnerConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("learner: alpha must lie in (0, 1], got " + std::to_string(alpha));
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("learner: gamma must lie in [0, 1), got " + std::to_string(gamma));
  if (!(eps0 >= 0.0 && eps0 <= 1.0))
    throw std::invalid_argument("learner: eps0 must lie in [0, 1], got " + std::to_string(eps0));
}

LearnerConfig make_learner_config(double alpha, double gamma, double eps0) {
  LearnerConfig cfg{alpha, gamma, eps0};
  cfg.validate();
  return cfg;
}

QTable::QTable(int n_actions) {
  if (n_actions < 1)
    throw std::invalid_argument("q table: need at least one action");
  q_.assign(static_cast<std::size_t>(n_actions), 0.0);
}

std::size_t QTable::slot(ActionIndex k) const {
  if (k < 1 || k > size())
    throw std::out_of_range("q table: action index " + std::to_string(k) + " outside 1.." +
                            std::to_string(size()));
  return static_cast<std::size_t>(k - 1);
}

double QTable::max() const { return *std::max_element(q_.begin(), q_.end()); }

double epsilon_at(std::uint64_t t, double eps0) {
  if (t < 1)
    throw std::invalid_argument("epsilon schedule starts at t = 1");
  return std::min(1.0, eps0 / std::sqrt(static_cast<double>(t)));
}

ActionIndex select_action(const QTable &q, double eps, Engine &rng) {
  const auto values = q.values();
  const double coin = uniform01(rng);
  if (coin < eps)
    return static_cast<ActionIndex>(uniform_index(rng, values.size())) + 1;

  const double best = q.max();
  std::size_t ties = 0;
  for (const double v : values)
    ties += (v == best);
  std::size_t pick = ties > 1 ? uniform_index(rng, ties) : 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] != best)
      continue;
    if (pick == 0)
      return static_cast<ActionIndex>(k) + 1;
    --pick;
  }
  return 1;  // unreachable: best is taken from the table
}

void update(QTable &q, ActionIndex k, double reward, const LearnerConfig &cfg) {
  if (!std::isfinite(reward) || reward < 0.0 || reward > 1.0)
    throw std::invalid_argument("q update: reward " + std::to_string(reward) +
                                " outside [0, 1]");
  const double best = q.max();
  double &entry = q.at(k);
  entry += cfg.alpha * (reward + cfg.gamma * best - entry);
}

StatelessQLearner::StatelessQLearner(const LearnerConfig &cfg, int n_actions, Engine rng)
    : cfg_(cfg), q_(n_actions), rng_(std::move(rng)) {
  cfg_.validate();
}

ActionIndex StatelessQLearner::act(std::uint64_t t) {
  return select_action(q_, epsilon_at(t, cfg_.eps0), rng_);
}

} // namespace wnql
