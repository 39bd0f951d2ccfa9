#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace forestopt {

/// Ground sensor with a sensing task to clear this slot.
struct SensorNode {
  Eigen::Vector3d position{0, 0, 0};  // z is always 0
  double task_bits = 0;               // Ca_j
  double cycles_per_bit = 0;          // C_j
  double local_cpu_hz = 0;            // f_L,j
};

/// Rotary-wing power model constants plus mission speed profile.
struct EnergyParams {
  double p_blade_w = 79.86;
  double p_induced_w = 88.63;
  double tip_speed_ms = 120.0;
  double hover_induced_ms = 4.03;
  double drag_ratio = 0.6;
  double air_density = 1.225;
  double rotor_solidity = 0.05;
  double disk_area_m2 = 0.503;
  double gravity_ms2 = 9.8;
  double climb_speed_ms = 6.0;
  double descend_speed_ms = 2.0;
  double horizontal_speed_ms = 10.0;
};

struct UavSpec {
  Eigen::Vector3d initial_position{0, 0, 0};
  double mass_kg = 2.0;
  EnergyParams energy;
};

/// Air-to-ground channel crossing partial forest canopy.
struct ChannelParams {
  double bandwidth_hz = 1e6;
  double carrier_mhz = 920.0;
  double noise_w = 1e-13;         // -100 dBm
  double forest_fraction = 0.2;   // canopy share of each link length
};

/// Decision-variable boxes plus the two weak-constraint constants.
struct Bounds {
  double xy_min = 0;
  double xy_max = 800;
  double z_min = 10;
  double z_max = 30;
  double p_min = 0.1;             // watts
  double p_max = 1.0;
  double f_u_min = 0.5e9;         // Hz
  double f_u_max = 1e9;
  double p_total_w = 0;           // transmit-power budget across all SNs
  double safe_distance_m = 5.0;   // pairwise hover separation floor
};

enum class StartDistribution { uniform, gaussian, exponential };

std::string to_string(StartDistribution d);
StartDistribution start_distribution_from_string(const std::string& s);

struct Scenario {
  std::uint64_t seed = 0;
  double side = 800;
  StartDistribution distribution = StartDistribution::uniform;
  std::vector<SensorNode> sensors;  // size K
  std::vector<UavSpec> uavs;        // size M
  Bounds bounds;
  ChannelParams channel;

  int m() const { return static_cast<int>(uavs.size()); }
  int k() const { return static_cast<int>(sensors.size()); }
};

struct ScenarioConfig {
  int uavs = 6;
  int sns = 50;
  double side = 800;
  StartDistribution distribution = StartDistribution::uniform;
  std::uint64_t seed = 0;
};

/// Draws sensors before UAV starts, so two configs differing only in the
/// start distribution share the exact sensor layout under the same seed.
/// Throws std::invalid_argument on K < M or non-positive dimensions.
Scenario generate_scenario(const ScenarioConfig& cfg);

/// Throws std::invalid_argument on any violated structural invariant.
void validate(const Scenario& s);

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(const std::string& path);

std::uint64_t fnv1a64(const std::string& text);
/// FNV-1a over the canonical JSON encoding; pins run artifacts to the
/// scenario they came from.
std::uint64_t scenario_digest(const Scenario& s);

}  // namespace forestopt
