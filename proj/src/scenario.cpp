#include "forestopt/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace forestopt {

using nlohmann::json;

std::string to_string(StartDistribution d) {
  switch (d) {
    case StartDistribution::uniform: return "uniform";
    case StartDistribution::gaussian: return "gaussian";
    case StartDistribution::exponential: return "exponential";
  }
  throw std::logic_error("unhandled distribution");
}

StartDistribution start_distribution_from_string(const std::string& s) {
  if (s == "uniform") return StartDistribution::uniform;
  if (s == "gaussian") return StartDistribution::gaussian;
  if (s == "exponential") return StartDistribution::exponential;
  throw std::invalid_argument("unknown start distribution: " + s);
}

Scenario generate_scenario(const ScenarioConfig& cfg) {
  if (cfg.uavs < 1) throw std::invalid_argument("need at least one UAV");
  if (cfg.sns < cfg.uavs)
    throw std::invalid_argument("need at least as many SNs as UAVs");
  if (cfg.side <= 0) throw std::invalid_argument("area side must be positive");

  Scenario s;
  s.seed = cfg.seed;
  s.side = cfg.side;
  s.distribution = cfg.distribution;
  s.bounds.xy_max = cfg.side;
  s.bounds.p_total_w = cfg.sns * s.bounds.p_max / 2.0;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coord(0.0, cfg.side);
  std::uniform_int_distribution<int> w1(1, 4);
  std::uniform_int_distribution<int> w2(1, 3);

  s.sensors.resize(cfg.sns);
  for (auto& sn : s.sensors) {
    sn.position = {coord(rng), coord(rng), 0.0};
    sn.task_bits = 1048576.0 * w1(rng);
    sn.cycles_per_bit = 100.0 * w2(rng);
    sn.local_cpu_hz = 1e8;
  }

  std::uniform_real_distribution<double> alt(s.bounds.z_min, s.bounds.z_max);
  std::normal_distribution<double> centered(cfg.side / 2.0, cfg.side / 6.0);
  std::exponential_distribution<double> corner(4.0 / cfg.side);
  auto clamp_xy = [&](double v) { return std::clamp(v, 0.0, cfg.side); };

  s.uavs.resize(cfg.uavs);
  for (auto& uav : s.uavs) {
    double x = 0, y = 0;
    switch (cfg.distribution) {
      case StartDistribution::uniform:
        x = coord(rng);
        y = coord(rng);
        break;
      case StartDistribution::gaussian:
        x = clamp_xy(centered(rng));
        y = clamp_xy(centered(rng));
        break;
      case StartDistribution::exponential:
        x = clamp_xy(corner(rng));
        y = clamp_xy(corner(rng));
        break;
    }
    uav.initial_position = {x, y, alt(rng)};
  }

  validate(s);
  return s;
}

void validate(const Scenario& s) {
  auto req = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("scenario: ") + msg);
  };
  const Bounds& b = s.bounds;
  req(s.m() >= 1, "need at least one UAV");
  req(s.k() >= s.m(), "need at least as many SNs as UAVs");
  req(s.side > 0, "side must be positive");
  req(b.xy_min < b.xy_max, "xy bounds inverted");
  req(b.z_min < b.z_max, "z bounds inverted");
  req(b.p_min < b.p_max, "power bounds inverted");
  req(b.f_u_min < b.f_u_max, "cpu bounds inverted");
  req(b.p_total_w > 0, "power budget must be positive");
  req(b.safe_distance_m > 0, "safe distance must be positive");
  req(s.channel.bandwidth_hz > 0, "bandwidth must be positive");
  req(s.channel.carrier_mhz > 0, "carrier must be positive");
  req(s.channel.noise_w > 0, "noise must be positive");
  req(s.channel.forest_fraction >= 0 && s.channel.forest_fraction <= 1,
      "forest fraction outside [0,1]");
  for (const auto& sn : s.sensors) {
    req(sn.position.z() == 0, "sensor altitude must be 0");
    req(sn.position.x() >= b.xy_min && sn.position.x() <= b.xy_max &&
            sn.position.y() >= b.xy_min && sn.position.y() <= b.xy_max,
        "sensor outside area");
    req(sn.task_bits >= 1, "task_bits must be >= 1");
    req(sn.cycles_per_bit >= 1, "cycles_per_bit must be >= 1");
    req(sn.local_cpu_hz > 0, "local cpu must be positive");
  }
  for (const auto& uav : s.uavs) {
    const auto& p = uav.initial_position;
    req(p.x() >= b.xy_min && p.x() <= b.xy_max && p.y() >= b.xy_min &&
            p.y() <= b.xy_max,
        "uav start outside area");
    req(p.z() >= b.z_min && p.z() <= b.z_max, "uav start altitude outside bounds");
    req(uav.mass_kg > 0, "uav mass must be positive");
    const EnergyParams& e = uav.energy;
    req(e.p_blade_w > 0 && e.p_induced_w > 0 && e.tip_speed_ms > 0 &&
            e.hover_induced_ms > 0 && e.drag_ratio > 0 && e.air_density > 0 &&
            e.rotor_solidity > 0 && e.disk_area_m2 > 0 && e.gravity_ms2 > 0 &&
            e.climb_speed_ms > 0 && e.descend_speed_ms > 0 &&
            e.horizontal_speed_ms > 0,
        "energy params must be strictly positive");
  }
}

namespace {

json energy_to_json(const EnergyParams& e) {
  return json{{"p_blade_w", e.p_blade_w},
              {"p_induced_w", e.p_induced_w},
              {"tip_speed_ms", e.tip_speed_ms},
              {"hover_induced_ms", e.hover_induced_ms},
              {"drag_ratio", e.drag_ratio},
              {"air_density", e.air_density},
              {"rotor_solidity", e.rotor_solidity},
              {"disk_area_m2", e.disk_area_m2},
              {"gravity_ms2", e.gravity_ms2},
              {"climb_speed_ms", e.climb_speed_ms},
              {"descend_speed_ms", e.descend_speed_ms},
              {"horizontal_speed_ms", e.horizontal_speed_ms}};
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error("scenario json: missing '" + where + key + "'");
  return *it;
}

EnergyParams energy_from_json(const json& j, const std::string& where) {
  EnergyParams e;
  e.p_blade_w = need(j, "p_blade_w", where).get<double>();
  e.p_induced_w = need(j, "p_induced_w", where).get<double>();
  e.tip_speed_ms = need(j, "tip_speed_ms", where).get<double>();
  e.hover_induced_ms = need(j, "hover_induced_ms", where).get<double>();
  e.drag_ratio = need(j, "drag_ratio", where).get<double>();
  e.air_density = need(j, "air_density", where).get<double>();
  e.rotor_solidity = need(j, "rotor_solidity", where).get<double>();
  e.disk_area_m2 = need(j, "disk_area_m2", where).get<double>();
  e.gravity_ms2 = need(j, "gravity_ms2", where).get<double>();
  e.climb_speed_ms = need(j, "climb_speed_ms", where).get<double>();
  e.descend_speed_ms = need(j, "descend_speed_ms", where).get<double>();
  e.horizontal_speed_ms = need(j, "horizontal_speed_ms", where).get<double>();
  return e;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["meta"] = json{{"seed", s.seed},
                   {"m", s.m()},
                   {"k", s.k()},
                   {"side", s.side},
                   {"distribution", to_string(s.distribution)}};
  json sensors = json::array();
  for (const auto& sn : s.sensors) {
    sensors.push_back(json{{"x", sn.position.x()},
                           {"y", sn.position.y()},
                           {"task_bits", sn.task_bits},
                           {"cycles_per_bit", sn.cycles_per_bit},
                           {"local_cpu_hz", sn.local_cpu_hz}});
  }
  j["sensors"] = std::move(sensors);
  json uavs = json::array();
  for (const auto& uav : s.uavs) {
    uavs.push_back(json{{"x", uav.initial_position.x()},
                        {"y", uav.initial_position.y()},
                        {"z", uav.initial_position.z()},
                        {"mass_kg", uav.mass_kg},
                        {"energy", energy_to_json(uav.energy)}});
  }
  j["uavs"] = std::move(uavs);
  const Bounds& b = s.bounds;
  j["bounds"] = json{{"xy_min", b.xy_min},
                     {"xy_max", b.xy_max},
                     {"z_min", b.z_min},
                     {"z_max", b.z_max},
                     {"p_min", b.p_min},
                     {"p_max", b.p_max},
                     {"f_u_min", b.f_u_min},
                     {"f_u_max", b.f_u_max},
                     {"p_total_w", b.p_total_w},
                     {"safe_distance_m", b.safe_distance_m}};
  const ChannelParams& c = s.channel;
  j["channel"] = json{{"bandwidth_hz", c.bandwidth_hz},
                      {"carrier_mhz", c.carrier_mhz},
                      {"noise_w", c.noise_w},
                      {"forest_fraction", c.forest_fraction}};
  return j.dump();
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario json: ") + e.what());
  }
  Scenario s;
  const json& meta = need(j, "meta", "");
  s.seed = need(meta, "seed", "meta.").get<std::uint64_t>();
  s.side = need(meta, "side", "meta.").get<double>();
  if (meta.contains("distribution"))
    s.distribution =
        start_distribution_from_string(meta["distribution"].get<std::string>());
  int m = need(meta, "m", "meta.").get<int>();
  int k = need(meta, "k", "meta.").get<int>();

  const json& sensors = need(j, "sensors", "");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const json& sj = sensors[i];
    std::string where = "sensors[" + std::to_string(i) + "].";
    SensorNode sn;
    sn.position = {need(sj, "x", where).get<double>(),
                   need(sj, "y", where).get<double>(), 0.0};
    sn.task_bits = need(sj, "task_bits", where).get<double>();
    sn.cycles_per_bit = need(sj, "cycles_per_bit", where).get<double>();
    sn.local_cpu_hz = need(sj, "local_cpu_hz", where).get<double>();
    s.sensors.push_back(sn);
  }
  const json& uavs = need(j, "uavs", "");
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    const json& uj = uavs[i];
    std::string where = "uavs[" + std::to_string(i) + "].";
    UavSpec uav;
    uav.initial_position = {need(uj, "x", where).get<double>(),
                            need(uj, "y", where).get<double>(),
                            need(uj, "z", where).get<double>()};
    uav.mass_kg = need(uj, "mass_kg", where).get<double>();
    uav.energy = energy_from_json(need(uj, "energy", where), where + "energy.");
    s.uavs.push_back(uav);
  }
  if (s.m() != m || s.k() != k)
    throw std::runtime_error("scenario json: meta m/k disagree with array sizes");

  const json& b = need(j, "bounds", "");
  s.bounds.xy_min = need(b, "xy_min", "bounds.").get<double>();
  s.bounds.xy_max = need(b, "xy_max", "bounds.").get<double>();
  s.bounds.z_min = need(b, "z_min", "bounds.").get<double>();
  s.bounds.z_max = need(b, "z_max", "bounds.").get<double>();
  s.bounds.p_min = need(b, "p_min", "bounds.").get<double>();
  s.bounds.p_max = need(b, "p_max", "bounds.").get<double>();
  s.bounds.f_u_min = need(b, "f_u_min", "bounds.").get<double>();
  s.bounds.f_u_max = need(b, "f_u_max", "bounds.").get<double>();
  s.bounds.p_total_w = need(b, "p_total_w", "bounds.").get<double>();
  s.bounds.safe_distance_m = need(b, "safe_distance_m", "bounds.").get<double>();

  const json& c = need(j, "channel", "");
  s.channel.bandwidth_hz = need(c, "bandwidth_hz", "channel.").get<double>();
  s.channel.carrier_mhz = need(c, "carrier_mhz", "channel.").get<double>();
  s.channel.noise_w = need(c, "noise_w", "channel.").get<double>();
  s.channel.forest_fraction =
      need(c, "forest_fraction", "channel.").get<double>();

  validate(s);
  return s;
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << json::parse(scenario_to_json(s)).dump(2) << '\n';
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t scenario_digest(const Scenario& s) {
  return fnv1a64(scenario_to_json(s));
}

}  // namespace forestopt
