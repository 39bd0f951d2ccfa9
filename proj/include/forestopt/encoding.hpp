#pragma once

#include <random>
#include <utility>

#include <Eigen/Core>

#include "forestopt/scenario.hpp"

namespace forestopt {

inline constexpr double kDeadLinkDelay = 1e9;
inline constexpr double kPenaltyFactor = 5.0;

/// One candidate deployment: continuous blocks Q (hover positions),
/// P (transmit powers), F (per-SN CPU share on its serving UAV, compressed),
/// C (offloaded bits) plus the integer assignment block A.
struct Solution {
  Eigen::Matrix<double, Eigen::Dynamic, 3> q;  // M x 3
  Eigen::VectorXd p;                           // K
  Eigen::VectorXd f_alloc;                     // K
  Eigen::VectorXd c_offload;                   // K, in [0, Ca_j]
  Eigen::VectorXi assign;                      // K, 1-based UAV index

  int m() const { return static_cast<int>(q.rows()); }
  int k() const { return static_cast<int>(assign.size()); }
};

struct ObjectiveVector {
  double f1_s = 0;
  double f2_j = 0;
  double f3_hz = 0;
  bool feasible = true;    // false on dead links
  bool penalized = false;  // weak-constraint multiplier applied

  Eigen::Vector3d values() const { return {f1_s, f2_j, f3_hz}; }
};

struct EvalBreakdown {
  double local_makespan_s = 0;   // max_j local compute time
  double edge_makespan_s = 0;    // max_i summed upload + edge time
  Eigen::Vector3d raw{0, 0, 0};  // objectives before any penalty
  bool power_budget_ok = true;   // summed SN transmit power within budget
  bool separation_ok = true;     // pairwise hover separation respected
  bool dead_link = false;
  ObjectiveVector objectives;
};

int solution_dim(int m, int k);

/// Every continuous coordinate uniform in its box, c_offload[j] in [0, Ca_j],
/// assign uniform in [1, M]; all box and domain constraints hold by
/// construction.
Solution random_solution(const Scenario& s, std::mt19937_64& rng);

/// Clamps every block into its box and assign into [1, M]. Deterministic.
void repair(Solution& sol, const Scenario& s);

/// True when all box and domain constraints hold (the weak power-budget and
/// separation couplings are evaluate's business, not checked here).
bool in_bounds(const Solution& sol, const Scenario& s);

/// Q row-major | P | F | C | A-as-double; length 3M + 4K.
Eigen::VectorXd flatten(const Solution& sol);
Solution unflatten(const Eigen::VectorXd& x, int m, int k);

/// Concatenated continuous blocks in Q|P|[F|]C order; F only when asked.
Eigen::VectorXd flatten_continuous(const Solution& sol, bool include_f);
void unflatten_continuous(const Eigen::VectorXd& x, bool include_f,
                          Solution& sol);

/// Per-coordinate (lower, upper) vectors matching flatten_continuous's
/// layout. Offload upper bounds are the per-sensor task sizes.
std::pair<Eigen::VectorXd, Eigen::VectorXd> continuous_bounds(
    const Scenario& s, bool include_f);

/// f1 = max(local, edge makespan), f2 = summed relocation energy,
/// f3 = max CPU allocation over assigned pairs. Violating the power budget
/// or the separation floor multiplies all three by `penalty` once; a dead
/// link (zero rate, positive offload) sets f1 to the sentinel and clears
/// `feasible` instead.
ObjectiveVector evaluate(const Solution& sol, const Scenario& s,
                         double penalty = kPenaltyFactor);
EvalBreakdown evaluate_detail(const Solution& sol, const Scenario& s,
                              double penalty = kPenaltyFactor);

/// Full-offload delay of sensor j served by UAV i for every pair, from the
/// solution's hover, power and CPU blocks. Lets exhaustive assignment search
/// cross-check the edge makespan on tiny instances.
Eigen::MatrixXd makespan_fixture(const Solution& sol, const Scenario& s);

}  // namespace forestopt
