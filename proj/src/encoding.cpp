#include "forestopt/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forestopt/physics.hpp"

namespace forestopt {

int solution_dim(int m, int k) { return 3 * m + 4 * k; }

Solution random_solution(const Scenario& s, std::mt19937_64& rng) {
  const Bounds& b = s.bounds;
  std::uniform_real_distribution<double> xy(b.xy_min, b.xy_max);
  std::uniform_real_distribution<double> z(b.z_min, b.z_max);
  std::uniform_real_distribution<double> pw(b.p_min, b.p_max);
  std::uniform_real_distribution<double> fu(b.f_u_min, b.f_u_max);
  std::uniform_int_distribution<int> uav(1, s.m());

  Solution sol;
  sol.q.resize(s.m(), 3);
  for (int i = 0; i < s.m(); ++i) sol.q.row(i) << xy(rng), xy(rng), z(rng);
  sol.p.resize(s.k());
  for (int j = 0; j < s.k(); ++j) sol.p[j] = pw(rng);
  sol.f_alloc.resize(s.k());
  for (int j = 0; j < s.k(); ++j) sol.f_alloc[j] = fu(rng);
  sol.c_offload.resize(s.k());
  for (int j = 0; j < s.k(); ++j) {
    std::uniform_real_distribution<double> off(0.0, s.sensors[j].task_bits);
    sol.c_offload[j] = off(rng);
  }
  sol.assign.resize(s.k());
  for (int j = 0; j < s.k(); ++j) sol.assign[j] = uav(rng);
  return sol;
}

void repair(Solution& sol, const Scenario& s) {
  const Bounds& b = s.bounds;
  for (int i = 0; i < sol.m(); ++i) {
    sol.q(i, 0) = std::clamp(sol.q(i, 0), b.xy_min, b.xy_max);
    sol.q(i, 1) = std::clamp(sol.q(i, 1), b.xy_min, b.xy_max);
    sol.q(i, 2) = std::clamp(sol.q(i, 2), b.z_min, b.z_max);
  }
  for (int j = 0; j < sol.k(); ++j) {
    sol.p[j] = std::clamp(sol.p[j], b.p_min, b.p_max);
    sol.f_alloc[j] = std::clamp(sol.f_alloc[j], b.f_u_min, b.f_u_max);
    sol.c_offload[j] = std::clamp(sol.c_offload[j], 0.0, s.sensors[j].task_bits);
    sol.assign[j] = std::clamp(sol.assign[j], 1, s.m());
  }
}

bool in_bounds(const Solution& sol, const Scenario& s) {
  const Bounds& b = s.bounds;
  if (sol.m() != s.m() || sol.k() != s.k()) return false;
  for (int i = 0; i < sol.m(); ++i) {
    if (sol.q(i, 0) < b.xy_min || sol.q(i, 0) > b.xy_max) return false;
    if (sol.q(i, 1) < b.xy_min || sol.q(i, 1) > b.xy_max) return false;
    if (sol.q(i, 2) < b.z_min || sol.q(i, 2) > b.z_max) return false;
  }
  for (int j = 0; j < sol.k(); ++j) {
    if (sol.p[j] < b.p_min || sol.p[j] > b.p_max) return false;
    if (sol.f_alloc[j] < b.f_u_min || sol.f_alloc[j] > b.f_u_max) return false;
    if (sol.c_offload[j] < 0 || sol.c_offload[j] > s.sensors[j].task_bits)
      return false;
    if (sol.assign[j] < 1 || sol.assign[j] > s.m()) return false;
  }
  return true;
}

Eigen::VectorXd flatten(const Solution& sol) {
  int m = sol.m(), k = sol.k();
  Eigen::VectorXd x(solution_dim(m, k));
  for (int i = 0; i < m; ++i) x.segment<3>(3 * i) = sol.q.row(i);
  x.segment(3 * m, k) = sol.p;
  x.segment(3 * m + k, k) = sol.f_alloc;
  x.segment(3 * m + 2 * k, k) = sol.c_offload;
  x.segment(3 * m + 3 * k, k) = sol.assign.cast<double>();
  return x;
}

Solution unflatten(const Eigen::VectorXd& x, int m, int k) {
  if (x.size() != solution_dim(m, k))
    throw std::invalid_argument("flattened solution has wrong length");
  Solution sol;
  sol.q.resize(m, 3);
  for (int i = 0; i < m; ++i) sol.q.row(i) = x.segment<3>(3 * i);
  sol.p = x.segment(3 * m, k);
  sol.f_alloc = x.segment(3 * m + k, k);
  sol.c_offload = x.segment(3 * m + 2 * k, k);
  sol.assign.resize(k);
  for (int j = 0; j < k; ++j)
    sol.assign[j] = static_cast<int>(std::llround(x[3 * m + 3 * k + j]));
  return sol;
}

Eigen::VectorXd flatten_continuous(const Solution& sol, bool include_f) {
  int m = sol.m(), k = sol.k();
  Eigen::VectorXd x(3 * m + (include_f ? 3 : 2) * k);
  for (int i = 0; i < m; ++i) x.segment<3>(3 * i) = sol.q.row(i);
  int at = 3 * m;
  x.segment(at, k) = sol.p;
  at += k;
  if (include_f) {
    x.segment(at, k) = sol.f_alloc;
    at += k;
  }
  x.segment(at, k) = sol.c_offload;
  return x;
}

void unflatten_continuous(const Eigen::VectorXd& x, bool include_f,
                          Solution& sol) {
  int m = sol.m(), k = sol.k();
  if (x.size() != 3 * m + (include_f ? 3 : 2) * k)
    throw std::invalid_argument("continuous block has wrong length");
  for (int i = 0; i < m; ++i) sol.q.row(i) = x.segment<3>(3 * i);
  int at = 3 * m;
  sol.p = x.segment(at, k);
  at += k;
  if (include_f) {
    sol.f_alloc = x.segment(at, k);
    at += k;
  }
  sol.c_offload = x.segment(at, k);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> continuous_bounds(
    const Scenario& s, bool include_f) {
  int m = s.m(), k = s.k();
  const Bounds& b = s.bounds;
  Eigen::VectorXd lo(3 * m + (include_f ? 3 : 2) * k);
  Eigen::VectorXd hi(lo.size());
  for (int i = 0; i < m; ++i) {
    lo.segment<3>(3 * i) << b.xy_min, b.xy_min, b.z_min;
    hi.segment<3>(3 * i) << b.xy_max, b.xy_max, b.z_max;
  }
  int at = 3 * m;
  lo.segment(at, k).setConstant(b.p_min);
  hi.segment(at, k).setConstant(b.p_max);
  at += k;
  if (include_f) {
    lo.segment(at, k).setConstant(b.f_u_min);
    hi.segment(at, k).setConstant(b.f_u_max);
    at += k;
  }
  for (int j = 0; j < k; ++j) {
    lo[at + j] = 0.0;
    hi[at + j] = s.sensors[j].task_bits;
  }
  return {lo, hi};
}

EvalBreakdown evaluate_detail(const Solution& sol, const Scenario& s,
                              double penalty) {
  if (sol.m() != s.m() || sol.k() != s.k())
    throw std::invalid_argument("solution shape disagrees with scenario");

  EvalBreakdown out;
  Eigen::VectorXd edge_per_uav = Eigen::VectorXd::Zero(s.m());
  double local_max = 0;
  double f3 = 0;
  for (int j = 0; j < s.k(); ++j) {
    const SensorNode& sn = s.sensors[j];
    int i = sol.assign[j] - 1;
    double local_bits = sn.task_bits - sol.c_offload[j];
    local_max = std::max(
        local_max, local_delay(local_bits, sn.cycles_per_bit, sn.local_cpu_hz));
    if (sol.c_offload[j] > 0) {
      double dist = (sol.q.row(i).transpose() - sn.position).norm();
      LinkBudget lb = link_budget(s.channel, sol.p[j], dist, true);
      if (lb.rate_bps <= 0) {
        out.dead_link = true;
      } else {
        edge_per_uav[i] += edge_delay(sol.c_offload[j], sn.cycles_per_bit,
                                      lb.rate_bps, sol.f_alloc[j]);
      }
    }
    f3 = std::max(f3, sol.f_alloc[j]);
  }
  out.local_makespan_s = local_max;
  out.edge_makespan_s = edge_per_uav.maxCoeff();

  double f1 = std::max(out.local_makespan_s, out.edge_makespan_s);
  if (out.dead_link) f1 = kDeadLinkDelay;

  double f2 = 0;
  for (int i = 0; i < s.m(); ++i) {
    f2 += motion_energy(s.uavs[i].initial_position, sol.q.row(i).transpose(),
                        s.uavs[i].mass_kg, s.uavs[i].energy);
  }

  out.power_budget_ok = sol.p.sum() <= s.bounds.p_total_w;
  for (int a = 0; a < s.m() && out.separation_ok; ++a)
    for (int b2 = a + 1; b2 < s.m(); ++b2)
      if ((sol.q.row(a) - sol.q.row(b2)).norm() < s.bounds.safe_distance_m) {
        out.separation_ok = false;
        break;
      }

  out.raw = {f1, f2, f3};
  ObjectiveVector obj;
  obj.f1_s = f1;
  obj.f2_j = f2;
  obj.f3_hz = f3;
  obj.feasible = !out.dead_link;
  if (!out.power_budget_ok || !out.separation_ok) {
    obj.f1_s *= penalty;
    obj.f2_j *= penalty;
    obj.f3_hz *= penalty;
    obj.penalized = true;
  }
  out.objectives = obj;
  return out;
}

ObjectiveVector evaluate(const Solution& sol, const Scenario& s,
                         double penalty) {
  return evaluate_detail(sol, s, penalty).objectives;
}

Eigen::MatrixXd makespan_fixture(const Solution& sol, const Scenario& s) {
  if (sol.m() != s.m() || sol.k() != s.k())
    throw std::invalid_argument("solution shape disagrees with scenario");
  Eigen::MatrixXd delays(s.m(), s.k());
  for (int i = 0; i < s.m(); ++i) {
    for (int j = 0; j < s.k(); ++j) {
      const SensorNode& sn = s.sensors[j];
      double dist = (sol.q.row(i).transpose() - sn.position).norm();
      LinkBudget lb = link_budget(s.channel, sol.p[j], dist, true);
      delays(i, j) = lb.rate_bps <= 0
                         ? kDeadLinkDelay
                         : edge_delay(sn.task_bits, sn.cycles_per_bit,
                                      lb.rate_bps, sol.f_alloc[j]);
    }
  }
  return delays;
}

}  // namespace forestopt
