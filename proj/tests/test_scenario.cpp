#include "doctest.h"

#include "wnql/scenario.hpp"

#include <stdexcept>
#include <string>

using namespace wnql;

namespace {

std::string location_of(const std::string &text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError &e) {
    return e.location();
  }
  return "";
}

const char *kMinimal = R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
  "n_channels": 2, "power_levels_dbm": [5, 10, 15, 20]})";

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("the shipped default scenario is the built-in default") {
  const Scenario file = load_scenario(WNQL_SOURCE_DIR "/scenarios/default.json");
  const Scenario builtin;
  CHECK(scenario_to_json(file) == scenario_to_json(builtin));
  CHECK(scenario_fingerprint(file) == scenario_fingerprint(builtin));
  CHECK(scenario_to_json(parse_scenario(kMinimal)) == scenario_to_json(builtin));
}

TEST_CASE("canonical form round-trips") {
  const Scenario sampled = load_scenario(WNQL_SOURCE_DIR "/scenarios/sampled.json");
  CHECK(sampled.path_loss.randomness_mode == RandomnessMode::sampled_per_link);
  CHECK(sampled.path_loss.gs_std_db == 4.0);
  for (const Scenario &sc : {Scenario{}, sampled}) {
    const std::string canon = scenario_to_json(sc);
    const Scenario back = parse_scenario(canon);
    CHECK(scenario_to_json(back) == canon);
    CHECK(scenario_fingerprint(back) == scenario_fingerprint(sc));
  }
  CHECK(scenario_fingerprint(sampled) != scenario_fingerprint(Scenario{}));
  CHECK(scenario_fingerprint(Scenario{}).size() == 16);
}

TEST_CASE("explicit networks") {
  const Scenario sc = parse_scenario(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 10, 10],
    "n_channels": 1, "power_levels_dbm": [0],
    "networks": [{"ap": [1, 1, 1], "sta": [2, 1, 1]}, {"ap": [8, 1, 1], "sta": [9, 1, 1]}]})");
  REQUIRE(sc.deployment.size() == 2);
  CHECK(sc.deployment.networks()[1].id == 2);
  CHECK(sc.deployment.networks()[1].sta_position == Point3D{9, 1, 1});
}

TEST_CASE("errors point at the offending location") {
  CHECK(location_of("{\n  \"schema\": \"wnql-scenario/1\",\n  \"map_dims_m\": [10, 5 10]\n}") ==
        "line 3, column 25");
  CHECK(location_of(R"({"schema": "other"})") == "/schema");
  CHECK(location_of(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
    "n_channels": 2, "power_levels_dbm": [5, 10], "path_loss": {"d_obs_m": 0}})") ==
        "/path_loss/d_obs_m");
  CHECK(location_of(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
    "n_channels": 2, "power_levels_dbm": [5, "x"]})") == "/power_levels_dbm/1");
  CHECK(location_of(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
    "n_channels": 2, "power_levels_dbm": [5], "radio": {"bandwith_hz": 1}})") ==
        "/radio/bandwith_hz");
  CHECK(location_of(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
    "n_channels": 2, "power_levels_dbm": [5], "shadowing": {"policy": "sometimes"}})") ==
        "/shadowing/policy");
  CHECK(location_of(R"({"schema": "wnql-scenario/1", "map_dims_m": [10, 5, 10],
    "n_channels": 1, "power_levels_dbm": [0],
    "networks": [{"ap": [1, 1, 1], "sta": [1, 1, 1]}]})") == "/networks");
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("shadowing policies") {
  Scenario sc = load_scenario(WNQL_SOURCE_DIR "/scenarios/sampled.json");
  const auto a = sc.channel_model(1), b = sc.channel_model(2);
  for (std::size_t i = 0; i < a.table().values().size(); ++i)
    CHECK(a.table().values()[i] == b.table().values()[i]);

  sc.shadowing_policy = ShadowingPolicy::per_run;
  const auto c = sc.channel_model(1), d = sc.channel_model(2), e = sc.channel_model(1);
  bool differ = false;
  for (std::size_t i = 0; i < c.table().values().size(); ++i) {
    differ |= c.table().values()[i] != d.table().values()[i];
    CHECK(c.table().values()[i] == e.table().values()[i]);
  }
  CHECK(differ);
}

}
