#include "forestopt/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace forestopt {

double forest_path_loss(double carrier_mhz, double d_forest_m) {
  if (carrier_mhz <= 0) throw std::domain_error("carrier must be positive");
  if (d_forest_m < 0) throw std::domain_error("forest depth must be nonnegative");
  if (d_forest_m == 0) return 0.0;
  return 0.0021 * std::pow(carrier_mhz, 0.43) * std::pow(d_forest_m, 0.13);
}

double free_space_path_loss(double carrier_mhz, double d_free_m) {
  if (carrier_mhz <= 0) throw std::domain_error("carrier must be positive");
  if (d_free_m <= 0) throw std::domain_error("free-space distance must be positive");
  return -27.56 + 20.0 * std::log10(carrier_mhz) + 20.0 * std::log10(d_free_m);
}

double split_path_loss(const ChannelParams& ch, double dist_m) {
  if (dist_m < 0) throw std::domain_error("distance must be nonnegative");
  double d_forest = ch.forest_fraction * dist_m;
  double d_free = std::max(dist_m - d_forest, 1e-9);
  return forest_path_loss(ch.carrier_mhz, d_forest) +
         free_space_path_loss(ch.carrier_mhz, d_free);
}

double link_rate(double p_w, double pl_total_db, const ChannelParams& ch,
                 bool assigned) {
  if (!assigned) return 0.0;
  if (ch.noise_w <= 0) throw std::domain_error("noise must be positive");
  double gain = std::pow(10.0, -pl_total_db / 10.0);
  return ch.bandwidth_hz * std::log2(1.0 + p_w * gain / ch.noise_w);
}

LinkBudget link_budget(const ChannelParams& ch, double p_w, double dist_m,
                       bool assigned) {
  LinkBudget lb;
  double d_forest = ch.forest_fraction * dist_m;
  double d_free = std::max(dist_m - d_forest, 1e-9);
  lb.pl_forest_db = forest_path_loss(ch.carrier_mhz, d_forest);
  lb.pl_free_db = free_space_path_loss(ch.carrier_mhz, d_free);
  lb.pl_total_db = lb.pl_forest_db + lb.pl_free_db;
  lb.rate_bps = link_rate(p_w, lb.pl_total_db, ch, assigned);
  return lb;
}

double local_delay(double bits_local, double cycles_per_bit,
                   double local_cpu_hz) {
  if (bits_local < 0) throw std::domain_error("bits must be nonnegative");
  if (bits_local == 0) return 0.0;
  if (local_cpu_hz <= 0) throw std::domain_error("local cpu must be positive");
  return bits_local * cycles_per_bit / local_cpu_hz;
}

double edge_delay(double bits_offloaded, double cycles_per_bit,
                  double rate_bps, double f_u_hz) {
  if (bits_offloaded < 0) throw std::domain_error("bits must be nonnegative");
  if (bits_offloaded == 0) return 0.0;
  if (rate_bps <= 0) throw std::domain_error("dead link: offload with zero rate");
  if (f_u_hz <= 0) throw std::domain_error("edge cpu must be positive");
  return bits_offloaded / rate_bps + bits_offloaded * cycles_per_bit / f_u_hz;
}

double blade_power(double v_ms, const EnergyParams& e) {
  double ratio = v_ms / e.tip_speed_ms;
  return e.p_blade_w * (1.0 + 3.0 * ratio * ratio);
}

double induced_power(double v_ms, const EnergyParams& e) {
  double v0_4 = std::pow(e.hover_induced_ms, 4.0);
  double v2 = v_ms * v_ms;
  double radicand =
      std::sqrt(1.0 + v2 * v2 / (4.0 * v0_4)) - v2 / (2.0 * v0_4);
  // The printed model divides the subtracted term by v0^4; for small v0 the
  // radicand can dip below zero, so it is clamped to keep the function total.
  return e.p_induced_w * std::sqrt(std::max(radicand, 0.0));
}

double parasite_power(double v_ms, const EnergyParams& e) {
  return 0.5 * e.drag_ratio * e.air_density * e.rotor_solidity *
         e.disk_area_m2 * v_ms * v_ms * v_ms;
}

double propulsion_power(double v_ms, const EnergyParams& e) {
  if (v_ms < 0) throw std::domain_error("speed must be nonnegative");
  return blade_power(v_ms, e) + induced_power(v_ms, e) + parasite_power(v_ms, e);
}

MotionPlan motion_plan(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                       const EnergyParams& e) {
  MotionPlan plan;
  plan.vertical_delta_m = end.z() - start.z();
  plan.horizontal_dist_m = (end.head<2>() - start.head<2>()).norm();
  if (plan.vertical_delta_m != 0) {
    double speed =
        plan.vertical_delta_m > 0 ? e.climb_speed_ms : e.descend_speed_ms;
    plan.segments.push_back({speed, std::abs(plan.vertical_delta_m) / speed});
  }
  if (plan.horizontal_dist_m > 0) {
    plan.segments.push_back(
        {e.horizontal_speed_ms, plan.horizontal_dist_m / e.horizontal_speed_ms});
  }
  return plan;
}

double motion_energy(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                     double mass_kg, const EnergyParams& e) {
  MotionPlan plan = motion_plan(start, end, e);
  double energy = 0;
  for (const auto& seg : plan.segments)
    energy += propulsion_power(seg.speed_ms, e) * seg.duration_s;
  energy += mass_kg * e.gravity_ms2 * plan.vertical_delta_m;
  return energy;
}

}  // namespace forestopt
