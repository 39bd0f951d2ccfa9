#pragma once

#include <vector>

#include <Eigen/Core>

#include "forestopt/scenario.hpp"

namespace forestopt {

struct LinkBudget {
  double pl_forest_db = 0;
  double pl_free_db = 0;
  double pl_total_db = 0;
  double rate_bps = 0;
};

/// Weissberger-style canopy loss in dB: 0.0021 f^0.43 D^0.13 with f in MHz
/// and depth in metres. Zero depth costs zero; negative depth throws.
double forest_path_loss(double carrier_mhz, double d_forest_m);

/// Free-space loss in dB: -27.56 + 20 log10(f) + 20 log10(D).
/// Throws std::domain_error on d_free_m <= 0.
double free_space_path_loss(double carrier_mhz, double d_free_m);

/// Splits a 3D link of length dist_m into canopy and free segments by
/// channel.forest_fraction and sums both losses. The free segment is clamped
/// to >= 1e-9 m so the log term stays finite on degenerate geometry.
double split_path_loss(const ChannelParams& ch, double dist_m);

/// Shannon rate in bit/s; an unassigned link carries nothing.
double link_rate(double p_w, double pl_total_db, const ChannelParams& ch,
                 bool assigned);

/// Full budget for one link at 3D distance dist_m.
LinkBudget link_budget(const ChannelParams& ch, double p_w, double dist_m,
                       bool assigned);

/// Seconds to process bits locally. Throws std::domain_error on zero CPU.
double local_delay(double bits_local, double cycles_per_bit,
                   double local_cpu_hz);

/// Upload plus edge-compute seconds. Zero bits cost zero even on a dead
/// link; positive bits with rate <= 0 throw std::domain_error.
double edge_delay(double bits_offloaded, double cycles_per_bit,
                  double rate_bps, double f_u_hz);

double blade_power(double v_ms, const EnergyParams& e);
double induced_power(double v_ms, const EnergyParams& e);
double parasite_power(double v_ms, const EnergyParams& e);
double propulsion_power(double v_ms, const EnergyParams& e);

struct MotionSegment {
  double speed_ms = 0;
  double duration_s = 0;
};

/// Straight-line relocation under the fly-hover protocol: vertical leg first
/// (climb or descend speed by the sign of dz), then horizontal at cruise.
struct MotionPlan {
  double vertical_delta_m = 0;  // end z minus start z, signed
  double horizontal_dist_m = 0;
  std::vector<MotionSegment> segments;
};

MotionPlan motion_plan(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                       const EnergyParams& e);

/// Propulsion work plus signed potential-energy change; start == end is
/// exactly 0 and descents are not floored. Kinetic term is 0 (rest to rest).
double motion_energy(const Eigen::Vector3d& start, const Eigen::Vector3d& end,
                     double mass_kg, const EnergyParams& e);

}  // namespace forestopt
