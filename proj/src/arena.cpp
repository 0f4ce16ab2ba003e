#include "wnql/arena.hpp"

#include "wnql/text.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wnql {

namespace {

// A link too weak to carry any traffic even alone has nothing to normalize by.
double normalized(double throughput_bps, double max_bps) {
  return max_bps > 0.0 ? throughput_bps / max_bps : 0.0;
}

} // namespace

double compute_reward(std::size_t i, std::span<const ActionIndex> joint,
                      const ChannelModel &model) {
  return normalized(model.throughput_bps(i, joint), model.max_throughput_bps(i));
}

SimulationTrace run_episode(const ChannelModel &model, const LearnerConfig &cfg,
                            std::uint64_t iterations, std::uint64_t seed) {
  cfg.validate();
  if (iterations < 1)
    throw std::invalid_argument("run_episode: need at least one iteration");

  const std::size_t n = model.size();
  const int k_actions = model.action_space().size();

  Engine order_rng = make_engine(seed, Stream::permutation);
  Engine init_rng = make_engine(seed, Stream::initialization);

  std::vector<StatelessQLearner> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    agents.emplace_back(cfg, k_actions, make_engine(seed, Stream::exploration, i));

  JointAction joint(n);
  for (auto &a : joint)
    a = static_cast<ActionIndex>(uniform_index(init_rng, static_cast<std::size_t>(k_actions))) + 1;

  SimulationTrace trace;
  trace.config = cfg;
  trace.iterations = iterations;
  trace.seed = seed;
  trace.n_actions = k_actions;
  trace.records.reserve(iterations);

  std::vector<std::size_t> order(n);
  for (std::uint64_t t = 1; t <= iterations; ++t) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), order_rng);

    for (const std::size_t i : order) {
      const ActionIndex k = agents[i].act(t);
      joint[i] = k;
      agents[i].learn(k, compute_reward(i, joint, model));
    }

    IterationRecord rec;
    rec.t = t;
    rec.order.reserve(n);
    for (const std::size_t i : order)
      rec.order.push_back(static_cast<int>(i) + 1);
    rec.actions = joint;
    rec.throughput_bps.resize(n);
    model.throughputs_bps(joint, rec.throughput_bps);
    rec.reward.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      rec.reward[i] = normalized(rec.throughput_bps[i], model.max_throughput_bps(i));
    trace.records.push_back(std::move(rec));
  }

  trace.final_q.reserve(n);
  for (const auto &a : agents)
    trace.final_q.push_back(a.q_table());
  return trace;
}

SimulationTrace run_episode(const Deployment &dep, const PathLossParams &pl,
                            const RadioConfig &radio, const LearnerConfig &cfg,
                            std::uint64_t iterations, std::uint64_t seed) {
  Engine shadow_rng = make_engine(seed, Stream::shadowing);
  const ChannelModel model = make_channel_model(dep, pl, radio, shadow_rng);
  return run_episode(model, cfg, iterations, seed);
}

WindowMetrics window_metrics(const SimulationTrace &trace, std::size_t window) {
  if (window == 0 || window > trace.records.size())
    throw std::invalid_argument("window_metrics: window of " + std::to_string(window) +
                                " iterations does not fit a trace of " +
                                std::to_string(trace.records.size()));
  const std::size_t n = trace.n_networks();
  const std::size_t first = trace.records.size() - window;
  const auto k_actions = static_cast<std::size_t>(trace.n_actions);

  WindowMetrics m;
  m.window = window;
  m.mean_throughput_bps.assign(n, 0.0);
  m.std_throughput_bps.assign(n, 0.0);
  m.action_frequencies.assign(n, std::vector<double>(k_actions, 0.0));

  std::vector<std::size_t> counts(n * k_actions, 0);
  double aggregate = 0.0;
  for (std::size_t r = first; r < trace.records.size(); ++r) {
    const auto &rec = trace.records[r];
    for (std::size_t i = 0; i < n; ++i) {
      aggregate += rec.throughput_bps[i];
      m.mean_throughput_bps[i] += rec.throughput_bps[i];
      ++counts[i * k_actions + static_cast<std::size_t>(rec.actions[i] - 1)];
    }
  }
  const double w = static_cast<double>(window);
  m.mean_aggregate_bps = aggregate / w;
  for (std::size_t i = 0; i < n; ++i) {
    m.mean_throughput_bps[i] /= w;
    for (std::size_t k = 0; k < k_actions; ++k)
      m.action_frequencies[i][k] = static_cast<double>(counts[i * k_actions + k]) / w;
  }

  // Second pass for the spread, so no catastrophic cancellation.
  for (std::size_t r = first; r < trace.records.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const double d = trace.records[r].throughput_bps[i] - m.mean_throughput_bps[i];
      m.std_throughput_bps[i] += d * d;
    }
  for (auto &s : m.std_throughput_bps)
    s = std::sqrt(s / w);
  return m;
}

void write_trace_csv(std::ostream &os, const SimulationTrace &trace) {
  const std::size_t n = trace.n_networks();
  os << "# schema: wnql-trace/1\n";
  os << "# seed: " << trace.seed << '\n';
  os << "# alpha: " << format_double(trace.config.alpha) << '\n';
  os << "# gamma: " << format_double(trace.config.gamma) << '\n';
  os << "# eps0: " << format_double(trace.config.eps0) << '\n';
  os << "# iterations: " << trace.iterations << '\n';

  std::vector<std::string> header{"t", "order"};
  for (const char *prefix : {"action_", "throughput_bps_", "reward_"})
    for (std::size_t i = 1; i <= n; ++i)
      header.push_back(prefix + std::to_string(i));
  os << csv_row(header) << '\n';

  std::vector<std::string> row;
  for (const auto &rec : trace.records) {
    row.clear();
    row.push_back(std::to_string(rec.t));
    std::string order;
    for (std::size_t i = 0; i < rec.order.size(); ++i) {
      if (i)
        order += '-';
      order += std::to_string(rec.order[i]);
    }
    row.push_back(std::move(order));
    for (const auto a : rec.actions)
      row.push_back(std::to_string(a));
    for (const auto v : rec.throughput_bps)
      row.push_back(format_double(v));
    for (const auto v : rec.reward)
      row.push_back(format_double(v));
    os << csv_row(row) << '\n';
  }
}

void write_qtable_csv(std::ostream &os, const SimulationTrace &trace) {
  os << "# schema: wnql-qtable/1\n";
  os << "network,action,q\n";
  for (std::size_t i = 0; i < trace.final_q.size(); ++i) {
    const auto values = trace.final_q[i].values();
    for (std::size_t k = 0; k < values.size(); ++k)
      os << (i + 1) << ',' << (k + 1) << ',' << format_double(values[k]) << '\n';
  }
}

} // namespace wnql
