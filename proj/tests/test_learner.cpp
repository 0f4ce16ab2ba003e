#include "doctest.h"

#include "wnql/learner.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

using namespace wnql;

namespace {

QTable table_of(std::initializer_list<double> values) {
  QTable q(static_cast<int>(values.size()));
  int k = 1;
  for (const double v : values)
    q.at(k++) = v;
  return q;
}

std::vector<int> histogram(const QTable &q, double eps, std::uint64_t seed, int draws) {
  Engine rng = make_engine(seed, Stream::exploration);
  std::vector<int> counts(static_cast<std::size_t>(q.size()), 0);
  for (int i = 0; i < draws; ++i)
    ++counts[static_cast<std::size_t>(select_action(q, eps, rng) - 1)];
  return counts;
}

void check_uniform(const std::vector<int> &counts, int draws) {
  const double p = 1.0 / static_cast<double>(counts.size());
  const double sigma = std::sqrt(draws * p * (1.0 - p));
  for (const int c : counts)
    CHECK(std::abs(c - draws * p) < 3.0 * sigma);
}

} // namespace

TEST_SUITE("learner") {

TEST_CASE("config ranges") {
  CHECK_NOTHROW(make_learner_config(1.0, 0.0, 0.0));
  CHECK_NOTHROW(make_learner_config(0.01, 0.99, 1.0));
  CHECK_THROWS_AS(make_learner_config(0.0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_learner_config(1.1, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_learner_config(0.5, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_learner_config(0.5, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_learner_config(0.5, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("epsilon_at") {
  CHECK(epsilon_at(1, 1.0) == 1.0);
  CHECK(epsilon_at(4, 1.0) == 0.5);
  CHECK(epsilon_at(100, 0.1) == doctest::Approx(0.01));
  CHECK_THROWS_AS(epsilon_at(0, 1.0), std::invalid_argument);
}

TEST_CASE("epsilon schedule is non-increasing, capped and vanishing") {
  for (const double eps0 : {0.0, 0.05, 0.5, 1.0}) {
    double prev = 1.0;
    for (std::uint64_t t = 1; t <= 100000; ++t) {
      const double e = epsilon_at(t, eps0);
      CHECK(e <= prev);
      CHECK(e <= 1.0);
      prev = e;
    }
    CHECK(epsilon_at(1'000'000'000'000ULL, eps0) < 1e-5);
  }
}

TEST_CASE("greedy selection picks the unique maximum") {
  const QTable q = table_of({0.0, 0.0, 0.7, 0.0});
  Engine rng = make_engine(1, Stream::exploration);
  for (int i = 0; i < 100; ++i)
    CHECK(select_action(q, 0.0, rng) == 3);
}

TEST_CASE("full exploration is uniform") {
  const int draws = 100000;
  check_uniform(histogram(table_of({0.0, 0.0, 0.7, 0.0, 0.1, 0.2, 0.9, 0.0}), 1.0, 2, draws), draws);
}

TEST_CASE("ties are broken uniformly") {
  const int draws = 100000;
  check_uniform(histogram(QTable(8), 0.0, 3, draws), draws);
  const auto counts = histogram(table_of({0.5, 0.1, 0.5, 0.5}), 0.0, 4, draws);
  CHECK(counts[1] == 0);
  check_uniform({counts[0], counts[2], counts[3]}, draws);
}

TEST_CASE("selection is deterministic per seed") {
  const QTable q = table_of({0.2, 0.4, 0.4, 0.1});
  CHECK(histogram(q, 0.3, 9, 1000) == histogram(q, 0.3, 9, 1000));
  Engine a = make_engine(9, Stream::exploration), b = make_engine(9, Stream::exploration);
  for (int i = 0; i < 1000; ++i)
    CHECK(select_action(q, 0.3, a) == select_action(q, 0.3, b));
}

TEST_CASE("selection is invariant to positive scaling of the table") {
  const QTable q = table_of({0.2, 0.4, 0.4, 0.1, 0.05});
  QTable scaled(5);
  for (int k = 1; k <= 5; ++k)
    scaled.at(k) = q[k] * 7.25;
  Engine a = make_engine(10, Stream::exploration), b = make_engine(10, Stream::exploration);
  for (int i = 0; i < 5000; ++i)
    CHECK(select_action(q, 0.2, a) == select_action(scaled, 0.2, b));
}

TEST_CASE("update rule") {
  const auto cfg = make_learner_config(1.0, 0.95, 1.0);
  QTable q(8);
  update(q, 3, 0.5, cfg);
  CHECK(q[3] == 0.5);
  for (int k = 1; k <= 8; ++k)
    if (k != 3)
      CHECK(q[k] == 0.0);

  SUBCASE("alpha = 0 leaves the table unchanged") {
    LearnerConfig frozen{0.0, 0.95, 1.0};  // bypasses validation on purpose
    const QTable before = q;
    update(q, 3, 1.0, frozen);
    CHECK(q == before);
  }
  SUBCASE("max is taken before the write, including the updated entry") {
    QTable t(4);
    t.at(2) = 0.5;
    update(t, 2, 1.0, make_learner_config(0.5, 0.95, 1.0));
    CHECK(t[2] == doctest::Approx(0.9875).epsilon(1e-15));
  }
  SUBCASE("rewards outside [0, 1] are rejected") {
    CHECK_THROWS_AS(update(q, 1, 1.0000001, cfg), std::invalid_argument);
    CHECK_THROWS_AS(update(q, 1, -0.1, cfg), std::invalid_argument);
    CHECK_THROWS_AS(update(q, 1, NAN, cfg), std::invalid_argument);
  }
  SUBCASE("out-of-range index") {
    CHECK_THROWS_AS(update(q, 9, 0.5, cfg), std::out_of_range);
  }
}

TEST_CASE("q values stay within [0, 1/(1-gamma)]") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> r(0.0, 1.0), a(0.01, 1.0), g(0.0, 0.99);
  for (int seq = 0; seq < 10000; ++seq) {
    const auto cfg = make_learner_config(a(gen), g(gen), 1.0);
    const double bound = 1.0 / (1.0 - cfg.gamma);
    const int k = 1 + static_cast<int>(gen() % 8);
    QTable q(k);
    const int steps = 1 + static_cast<int>(gen() % 200);
    for (int s = 0; s < steps; ++s)
      update(q, 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(k)),
             seq % 10 == 0 ? 1.0 : r(gen), cfg);
    for (const double v : q.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= bound * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("single-action table converges to r/(1-gamma)") {
  for (const auto &[alpha, gamma, reward] :
       {std::tuple{1.0, 0.95, 0.8}, {0.5, 0.9, 0.3}, {0.1, 0.5, 1.0}}) {
    const auto cfg = make_learner_config(alpha, gamma, 0.0);
    QTable q(1);
    for (int i = 0; i < 20000; ++i)
      update(q, 1, reward, cfg);
    const double target = reward / (1.0 - gamma);
    CHECK(std::abs(q[1] - target) <= 1e-9 * target);
  }
}

TEST_CASE("learner agent wires schedule, selection and update") {
  StatelessQLearner agent(make_learner_config(1.0, 0.0, 0.0), 4,
                          make_engine(1, Stream::exploration));
  const ActionIndex first = agent.act(1);
  agent.learn(first, 0.25);
  CHECK(agent.q_table()[first] == 0.25);
  for (std::uint64_t t = 2; t < 50; ++t)
    CHECK(agent.act(t) == first);
}

}
