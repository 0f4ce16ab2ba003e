#include "doctest.h"

#include "wnql/sweep.hpp"

#include <cmath>
#include <stdexcept>

using namespace wnql;

namespace {

SweepSpec small_spec(std::vector<Cell> cells, std::size_t reps) {
  SweepSpec s;
  s.name = "test";
  s.cells = std::move(cells);
  s.iterations = 300;
  s.window = 150;
  s.repetitions = reps;
  s.master_seed = 11;
  return s;
}

void check_same(const SweepResult &a, const SweepResult &b) {
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t c = 0; c < a.cells.size(); ++c) {
    CHECK(a.cells[c].mean_aggregate_bps == b.cells[c].mean_aggregate_bps);
    CHECK(a.cells[c].std_aggregate_bps == b.cells[c].std_aggregate_bps);
    CHECK(a.cells[c].mean_throughput_bps == b.cells[c].mean_throughput_bps);
    CHECK(a.cells[c].mean_action_frequencies == b.cells[c].mean_action_frequencies);
    CHECK(a.cells[c].timeseries_bps == b.cells[c].timeseries_bps);
    for (std::size_t r = 0; r < a.cells[c].episodes.size(); ++r)
      CHECK(a.cells[c].episodes[r].seed == b.cells[c].episodes[r].seed);
  }
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("mean_and_std") {
  CHECK(mean_and_std({}) == std::pair{0.0, 0.0});
  CHECK(mean_and_std({3.0}) == std::pair{3.0, 0.0});
  const auto [m, s] = mean_and_std({1.0, 2.0, 3.0, 4.0});
  CHECK(m == 2.5);
  CHECK(s == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("grid_cells and presets") {
  const auto cells = grid_cells({0.1, 1.0}, {0.5}, {0.2, 0.3});
  CHECK(cells == std::vector<Cell>{{0.1, 0.5, 0.2}, {0.1, 0.5, 0.3}, {1.0, 0.5, 0.2}, {1.0, 0.5, 0.3}});
  CHECK_THROWS_AS(grid_cells({}, {0.5}, {0.2}), std::invalid_argument);
  CHECK(paper_corners_preset().cells.size() == 4);
  const auto grid = paper_grid_preset();
  CHECK(grid.cells.size() == 20 * 19 * 20);
  CHECK(grid.cells[1].eps0 == 0.1);
  CHECK(grid.cells[2].eps0 == 0.15);
  for (const auto &c : grid.cells)
    CHECK(c.gamma < 1.0);
  CHECK(preset("paper-corners").has_value());
  CHECK_FALSE(preset("nothing").has_value());
}

TEST_CASE("spec validation") {
  auto s = small_spec({{1.0, 0.95, 1.0}}, 2);
  CHECK_NOTHROW(s.validate());
  s.window = 301;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_spec({}, 2);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_spec({{1.0, 1.0, 1.0}}, 2);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small_spec({{1.0, 0.5, 1.0}}, 0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("episode seeds depend on every coordinate") {
  const Cell c{1.0, 0.95, 1.0};
  const auto s = episode_seed(1, c, 0);
  CHECK(s == episode_seed(1, c, 0));
  CHECK(s != episode_seed(2, c, 0));
  CHECK(s != episode_seed(1, c, 1));
  CHECK(s != episode_seed(1, {0.5, 0.95, 1.0}, 0));
  CHECK(s != episode_seed(1, {1.0, 0.9, 1.0}, 0));
  CHECK(s != episode_seed(1, {1.0, 0.95, 0.5}, 0));
}

TEST_CASE("a single repetition reduces to that episode's window metrics") {
  const Scenario sc;
  const auto spec = small_spec({{1.0, 0.95, 1.0}}, 1);
  const auto res = run_sweep(spec, sc, Execution::serial);
  const auto &cell = res.cells.front();
  const auto trace = run_episode(sc.channel_model(), make_learner_config(1.0, 0.95, 1.0),
                                 spec.iterations, episode_seed(spec.master_seed, cell.cell, 0));
  const auto m = window_metrics(trace, spec.window);
  CHECK(cell.mean_aggregate_bps == m.mean_aggregate_bps);
  CHECK(cell.std_aggregate_bps == 0.0);
  CHECK(cell.mean_throughput_bps == m.mean_throughput_bps);
  CHECK(cell.mean_within_run_std_bps == m.std_throughput_bps);
  CHECK(cell.mean_action_frequencies == m.action_frequencies);
  REQUIRE(cell.timeseries_bps.size() == spec.iterations);
  CHECK(cell.timeseries_bps.back() == trace.records.back().throughput_bps);
}

TEST_CASE("cell statistics recompute from the episodes") {
  const auto res = run_sweep(small_spec({{0.5, 0.5, 0.5}}, 6), Scenario{}, Execution::serial);
  const auto &cell = res.cells.front();
  REQUIRE(cell.episodes.size() == 6);
  std::vector<double> aggs;
  for (std::size_t r = 0; r < 6; ++r) {
    CHECK(cell.episodes[r].repetition == r);
    aggs.push_back(cell.episodes[r].metrics.mean_aggregate_bps);
    CHECK(cell.episodes[r].optimum_aggregate_bps == res.oracle_aggregate_bps);
  }
  const auto [m, s] = mean_and_std(aggs);
  CHECK(cell.mean_aggregate_bps == doctest::Approx(m).epsilon(1e-9));
  CHECK(cell.std_aggregate_bps == doctest::Approx(s).epsilon(1e-9));
  CHECK(cell.optimum_aggregate_bps == doctest::Approx(res.oracle_aggregate_bps).epsilon(1e-12));
}

TEST_CASE("identical cells give identical statistics") {
  const auto res = run_sweep(small_spec({{1.0, 0.95, 1.0}, {1.0, 0.95, 1.0}}, 3), Scenario{},
                             Execution::serial);
  CHECK(res.cells[0].mean_aggregate_bps == res.cells[1].mean_aggregate_bps);
  CHECK(res.cells[0].std_aggregate_bps == res.cells[1].std_aggregate_bps);
}

TEST_CASE("serial, parallel and repeated sweeps agree exactly") {
  const auto spec = small_spec({{1.0, 0.95, 1.0}, {0.1, 0.05, 0.1}, {0.5, 0.5, 0.5}}, 4);
  Scenario sc;
  sc.path_loss.randomness_mode = RandomnessMode::sampled_per_link;
  sc.path_loss.gs_std_db = 4.0;
  sc.path_loss.go_halfwidth_db = 30.0;
  sc.shadowing_policy = ShadowingPolicy::per_run;
  const auto serial = run_sweep(spec, sc, Execution::serial);
  check_same(serial, run_sweep(spec, sc, Execution::parallel, 3));
  check_same(serial, run_sweep(spec, sc, Execution::parallel, 1));
  check_same(serial, run_sweep(spec, sc, Execution::serial));
  // Per-run shadowing gives every episode its own optimum.
  const auto &eps = serial.cells.front().episodes;
  CHECK(eps[0].optimum_aggregate_bps != eps[1].optimum_aggregate_bps);
}

TEST_CASE("full learning rate outperforms a slow one on the default scenario") {
  SweepSpec spec = small_spec({{1.0, 0.95, 1.0}, {0.1, 0.95, 1.0}}, 20);
  spec.iterations = 2000;
  spec.window = 1000;
  const auto res = run_sweep(spec, Scenario{});
  CHECK(res.cells[0].mean_aggregate_bps > res.cells[1].mean_aggregate_bps);
}

TEST_CASE("sweep spec files") {
  const auto f = load_sweep_file(WNQL_SOURCE_DIR "/specs/paper-corners.json");
  CHECK(f.spec.cells == paper_corners_preset().cells);
  CHECK(f.spec.repetitions == 100);
  CHECK(scenario_fingerprint(f.scenario) == scenario_fingerprint(Scenario{}));

  const auto g = load_sweep_file(WNQL_SOURCE_DIR "/specs/paper-grid.json");
  CHECK(g.spec.cells == paper_grid_preset().cells);
  CHECK_FALSE(g.spec.record_timeseries);

  const auto p = parse_sweep_file(R"({"schema": "wnql-sweep/1", "preset": "paper-corners",
    "repetitions": 5})", ".");
  CHECK(p.spec.repetitions == 5);
  CHECK(p.spec.cells.size() == 4);

  CHECK_THROWS_AS(parse_sweep_file(R"({"schema": "wnql-sweep/1"})", "."), ScenarioError);
  CHECK_THROWS_AS(parse_sweep_file(R"({"schema": "wnql-sweep/1", "preset": "paper-corners",
    "cells": [{"alpha": 1, "gamma": 0.5, "eps0": 1}]})", "."), ScenarioError);
  CHECK_THROWS_AS(parse_sweep_file(R"({"schema": "wnql-sweep/1", "preset": "x"})", "."),
                  ScenarioError);
  CHECK_THROWS_AS(parse_sweep_file(R"({"schema": "wnql-sweep/1", "preset": "paper-corners",
    "iterations": -1})", "."), ScenarioError);
}

}
