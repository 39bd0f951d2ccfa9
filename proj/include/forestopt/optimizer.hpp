#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forestopt/operators.hpp"

namespace forestopt {

/// rd/ud are the non-iterative deployment baselines; mogwo_* each add one
/// mechanism (diffusion, quasi-opposition, assignment rule) to plain mogwo;
/// imogwo carries all three. String names: rd, ud, mogwo, mogwo-1 (diffusion),
/// mogwo-2 (qbl), mogwo-3 (discrete), imogwo.
enum class Variant { rd, ud, mogwo, mogwo_diffusion, mogwo_qbl, mogwo_discrete, imogwo };

std::string variant_name(Variant v);
Variant variant_from_string(const std::string& s);

/// Mechanism toggles default from the variant (solver_config); run() obeys
/// the toggles, so imogwo with all three cleared replays mogwo exactly.
struct SolverConfig {
  Variant variant = Variant::imogwo;
  int g_max = 200;
  int pop = 20;
  int archive_capacity = 20;
  int grid_divisions = 10;
  double sigma1 = 0.1;
  double sigma2 = 0.5;
  double penalty_c = kPenaltyFactor;
  bool use_diffusion = true;
  bool use_qbl = true;
  bool use_discrete = true;  // branched assignment rule vs full regeneration
  // Whether the continuous-space mechanisms also move the CPU allocation
  // block. Diffusion defaults on: resampling the archive without 𝔽 leaves
  // the peak-frequency objective untouched and the ablation loses its
  // signature. QBL defaults off: reflection drags allocations toward the
  // interval midpoint and measurably degrades the delay objective.
  bool diffusion_include_cpu_alloc = true;
  bool qbl_include_cpu_alloc = false;
  std::uint64_t seed = 0;
};

/// Config with mechanism toggles matching the named variant.
SolverConfig solver_config(Variant v, std::uint64_t seed = 0);

struct IterationTrace {
  std::vector<Eigen::Vector3d> archive_objectives;
  Eigen::Vector3d minima{0, 0, 0};  // per-objective best within the archive
  double wall_ms = 0;
};

struct RunReport {
  SolverConfig config;
  std::uint64_t scenario_digest = 0;
  int m = 0;
  int k = 0;
  std::vector<ArchiveMember> front;   // final archive contents
  std::vector<IterationTrace> trace;  // length g_max; rd/ud replicate row 1
  double total_wall_ms = 0;
};

RunReport run(const Scenario& s, const SolverConfig& cfg);

/// n runs seeded base_seed + 0 ... + n-1, fanned out over worker threads
/// (FORESTOPT_WORKERS caps the pool); results are ordered by seed and
/// identical to serial execution.
std::vector<RunReport> run_repeated(const Scenario& s, const SolverConfig& cfg,
                                    int n_runs, std::uint64_t base_seed);

/// Canonical config encoding; feeds manifest hashing.
std::string config_to_json_string(const SolverConfig& c);

/// Timing fields are emitted only when include_timing; the canonical form
/// without them is byte-stable across identical runs.
std::string report_to_json(const RunReport& r, bool include_timing = false);
RunReport report_from_json(const std::string& text);
void save_report(const RunReport& r, const std::string& path,
                 bool include_timing = false);
RunReport load_report(const std::string& path);

}  // namespace forestopt
