#include "wnql/scenario.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace wnql {

using nlohmann::json;

ScenarioError::ScenarioError(const std::string &source, const std::string &location,
                             const std::string &message)
    : std::runtime_error(source + ": " + location + ": " + message), location_(location) {}

std::string to_string(RandomnessMode mode) {
  return mode == RandomnessMode::deterministic_means ? "deterministic-means"
                                                     : "sampled-per-link";
}

std::string to_string(ShadowingPolicy policy) {
  return policy == ShadowingPolicy::fixed ? "fixed" : "per-run";
}

ChannelModel Scenario::channel_model(std::uint64_t run_seed) const {
  const std::uint64_t seed = shadowing_policy == ShadowingPolicy::fixed ? shadowing_seed : run_seed;
  Engine rng = make_engine(seed, Stream::shadowing);
  return make_channel_model(deployment, path_loss, radio, rng);
}

namespace {

class Reader {
public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string &where, const std::string &msg) const {
    throw ScenarioError(source_, where.empty() ? "/" : where, msg);
  }

  void only_keys(const json &obj, const std::string &where,
                 std::initializer_list<const char *> allowed) const {
    if (!obj.is_object())
      fail(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : obj.items())
      if (!ok.contains(key))
        fail(where + "/" + key, "unknown key");
  }

  double number(const json &v, const std::string &where) const {
    if (!v.is_number())
      fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
      fail(where, "expected a finite number");
    return d;
  }

  double number_or(const json &obj, const char *key, const std::string &where,
                   double fallback) const {
    return obj.contains(key) ? number(obj.at(key), where + "/" + key) : fallback;
  }

  Point3D point(const json &v, const std::string &where) const {
    if (!v.is_array() || v.size() != 3)
      fail(where, "expected [x, y, z]");
    return {number(v[0], where + "/0"), number(v[1], where + "/1"), number(v[2], where + "/2")};
  }

  std::uint64_t unsigned_int(const json &v, const std::string &where) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      fail(where, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

private:
  std::string source_;
};

std::string line_column(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

Scenario parse_scenario(const std::string &text, const std::string &source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ScenarioError(source, line_column(text, e.byte), "syntax error");
  }

  const Reader rd(source);
  rd.only_keys(doc, "",
               {"schema", "description", "map_dims_m", "ap_sta_distance_m", "networks",
                "n_channels", "power_levels_dbm", "path_loss", "radio", "shadowing"});
  if (!doc.contains("schema") || doc["schema"] != "wnql-scenario/1")
    rd.fail("/schema", "expected \"wnql-scenario/1\"");

  Scenario sc;

  if (!doc.contains("map_dims_m"))
    rd.fail("/map_dims_m", "missing");
  const Point3D dims = rd.point(doc["map_dims_m"], "/map_dims_m");
  const MapDims map{dims.x, dims.y, dims.z};

  if (!doc.contains("n_channels"))
    rd.fail("/n_channels", "missing");
  const auto n_channels = rd.unsigned_int(doc["n_channels"], "/n_channels");

  if (!doc.contains("power_levels_dbm") || !doc["power_levels_dbm"].is_array())
    rd.fail("/power_levels_dbm", "expected a list of dBm values");
  std::vector<double> powers;
  for (std::size_t i = 0; i < doc["power_levels_dbm"].size(); ++i)
    powers.push_back(rd.number(doc["power_levels_dbm"][i], "/power_levels_dbm/" + std::to_string(i)));

  std::optional<ActionSpace> space;
  try {
    space.emplace(static_cast<int>(n_channels), powers);
  } catch (const std::invalid_argument &e) {
    rd.fail("/power_levels_dbm", e.what());
  }

  std::vector<WirelessNetwork> networks;
  const double ap_sta = rd.number_or(doc, "ap_sta_distance_m", "", std::sqrt(2.0));
  if (doc.contains("networks")) {
    const auto &list = doc["networks"];
    if (!list.is_array() || list.empty())
      rd.fail("/networks", "expected a non-empty list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/networks/" + std::to_string(i);
      rd.only_keys(list[i], where, {"ap", "sta"});
      if (!list[i].contains("ap") || !list[i].contains("sta"))
        rd.fail(where, "needs both \"ap\" and \"sta\"");
      WirelessNetwork wn;
      wn.id = static_cast<int>(i) + 1;
      wn.ap_position = rd.point(list[i]["ap"], where + "/ap");
      wn.sta_position = rd.point(list[i]["sta"], where + "/sta");
      if (doc.contains("ap_sta_distance_m") &&
          std::abs(distance(wn.ap_position, wn.sta_position) - ap_sta) > 1e-9)
        rd.fail(where, "AP-STA distance differs from ap_sta_distance_m");
      networks.push_back(wn);
    }
  } else {
    if (!(ap_sta > 0.0))
      rd.fail("/ap_sta_distance_m", "must be > 0");
    networks = grid_networks(map, ap_sta);
  }

  try {
    sc.deployment = Deployment(map, std::move(networks), *space);
  } catch (const std::invalid_argument &e) {
    rd.fail(doc.contains("networks") ? "/networks" : "/map_dims_m", e.what());
  }

  if (doc.contains("path_loss")) {
    const auto &pl = doc["path_loss"];
    const std::string w = "/path_loss";
    rd.only_keys(pl, w,
                 {"pl0_db", "alpha_pl", "gs_mean_db", "gs_std_db", "go_mean_db",
                  "go_halfwidth_db", "d_obs_m", "randomness_mode"});
    auto &p = sc.path_loss;
    p.pl0_db = rd.number_or(pl, "pl0_db", w, p.pl0_db);
    p.alpha_pl = rd.number_or(pl, "alpha_pl", w, p.alpha_pl);
    p.gs_mean_db = rd.number_or(pl, "gs_mean_db", w, p.gs_mean_db);
    p.gs_std_db = rd.number_or(pl, "gs_std_db", w, p.gs_std_db);
    p.go_mean_db = rd.number_or(pl, "go_mean_db", w, p.go_mean_db);
    p.go_halfwidth_db = rd.number_or(pl, "go_halfwidth_db", w, p.go_halfwidth_db);
    p.d_obs_m = rd.number_or(pl, "d_obs_m", w, p.d_obs_m);
    if (pl.contains("randomness_mode")) {
      const auto &m = pl["randomness_mode"];
      if (m == "deterministic-means")
        p.randomness_mode = RandomnessMode::deterministic_means;
      else if (m == "sampled-per-link")
        p.randomness_mode = RandomnessMode::sampled_per_link;
      else
        rd.fail(w + "/randomness_mode", "expected \"deterministic-means\" or \"sampled-per-link\"");
    }
    if (!(p.alpha_pl > 0.0))
      rd.fail(w + "/alpha_pl", "must be > 0");
    if (!(p.d_obs_m > 0.0))
      rd.fail(w + "/d_obs_m", "must be > 0");
    if (p.gs_std_db < 0.0)
      rd.fail(w + "/gs_std_db", "must be >= 0");
    if (p.go_halfwidth_db < 0.0)
      rd.fail(w + "/go_halfwidth_db", "must be >= 0");
  }

  if (doc.contains("radio")) {
    const auto &r = doc["radio"];
    const std::string w = "/radio";
    rd.only_keys(r, w, {"bandwidth_hz", "noise_dbm", "adjacent_leakage_db_per_channel"});
    sc.radio.bandwidth_hz = rd.number_or(r, "bandwidth_hz", w, sc.radio.bandwidth_hz);
    sc.radio.noise_dbm = rd.number_or(r, "noise_dbm", w, sc.radio.noise_dbm);
    sc.radio.adjacent_leakage_db_per_channel = rd.number_or(
        r, "adjacent_leakage_db_per_channel", w, sc.radio.adjacent_leakage_db_per_channel);
    if (!(sc.radio.bandwidth_hz > 0.0))
      rd.fail(w + "/bandwidth_hz", "must be > 0");
    if (sc.radio.adjacent_leakage_db_per_channel < 0.0)
      rd.fail(w + "/adjacent_leakage_db_per_channel", "must be >= 0");
  }

  if (doc.contains("shadowing")) {
    const auto &s = doc["shadowing"];
    rd.only_keys(s, "/shadowing", {"policy", "seed"});
    if (s.contains("policy")) {
      if (s["policy"] == "fixed")
        sc.shadowing_policy = ShadowingPolicy::fixed;
      else if (s["policy"] == "per-run")
        sc.shadowing_policy = ShadowingPolicy::per_run;
      else
        rd.fail("/shadowing/policy", "expected \"fixed\" or \"per-run\"");
    }
    if (s.contains("seed"))
      sc.shadowing_seed = rd.unsigned_int(s["seed"], "/shadowing/seed");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ScenarioError(path.string(), "/", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string scenario_to_json(const Scenario &sc) {
  const auto &dep = sc.deployment;
  json doc;
  doc["schema"] = "wnql-scenario/1";
  doc["map_dims_m"] = {dep.map_dims().x, dep.map_dims().y, dep.map_dims().z};
  doc["n_channels"] = dep.action_space().n_channels();
  doc["power_levels_dbm"] = dep.action_space().power_levels_dbm();
  json nets = json::array();
  for (const auto &wn : dep.networks())
    nets.push_back({{"ap", {wn.ap_position.x, wn.ap_position.y, wn.ap_position.z}},
                    {"sta", {wn.sta_position.x, wn.sta_position.y, wn.sta_position.z}}});
  doc["networks"] = nets;
  const auto &p = sc.path_loss;
  doc["path_loss"] = {{"pl0_db", p.pl0_db},
                      {"alpha_pl", p.alpha_pl},
                      {"gs_mean_db", p.gs_mean_db},
                      {"gs_std_db", p.gs_std_db},
                      {"go_mean_db", p.go_mean_db},
                      {"go_halfwidth_db", p.go_halfwidth_db},
                      {"d_obs_m", p.d_obs_m},
                      {"randomness_mode", to_string(p.randomness_mode)}};
  doc["radio"] = {{"bandwidth_hz", sc.radio.bandwidth_hz},
                  {"noise_dbm", sc.radio.noise_dbm},
                  {"adjacent_leakage_db_per_channel", sc.radio.adjacent_leakage_db_per_channel}};
  doc["shadowing"] = {{"policy", to_string(sc.shadowing_policy)}, {"seed", sc.shadowing_seed}};
  return doc.dump(2);
}

std::string scenario_fingerprint(const Scenario &sc) {
  // FNV-1a over the canonical text.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : scenario_to_json(sc)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace wnql
