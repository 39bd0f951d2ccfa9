#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forestopt/optimizer.hpp"
#include "forestopt/stats.hpp"

namespace forestopt {

/// tables and ablation emit the stats CSV; igd and drift additionally run
/// their analysis inline; distributions pairs a gaussian and an exponential
/// UAV-start scenario over a shared sensor layout.
enum class ExperimentKind { tables, ablation, igd, drift, distributions };

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_string(const std::string& s);

std::vector<Variant> default_algorithms(ExperimentKind k);

struct GenerateArgs {
  ScenarioConfig config;
  std::string out_path;
};

/// Writes the scenario JSON. Throws std::invalid_argument on bad config.
void cmd_generate(const GenerateArgs& args);

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::tables;
  std::string scenario_path;         // ignored by kind=distributions
  ScenarioConfig gen;                // used by kind=distributions
  std::vector<Variant> algorithms;   // empty -> kind defaults
  int n_runs = 30;
  SolverConfig base;                 // seed, g_max, pop, toggles
  std::string out_dir;
  bool include_timing = false;
};

/// Runs every algorithm x n_runs, writes per-run JSON under out_dir/runs/,
/// a manifest (seeds, scenario digest, config hash), and results.csv; the
/// igd and drift kinds append igd.csv / drift.csv.
void cmd_experiment(const ExperimentPlan& plan);

struct IgdArgs {
  std::string experiment_dir;
  std::string out_csv;  // default <experiment_dir>/igd.csv
};

/// Reference front = normalized non-dominated union of all final fronts in
/// the experiment; emits one row per (algorithm, iteration) with the mean
/// and per-run IGD values.
void cmd_igd(const IgdArgs& args);

struct DriftArgs {
  std::string experiment_dir;
  std::string algorithm = "imogwo";
  std::vector<double> levels_m{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  int draws = 30;
  std::uint64_t seed = 1;
  std::string out_csv;  // default <experiment_dir>/drift.csv
};

/// Perturbs the f1-minimal front member (from the run holding the overall
/// minimum f1 of the chosen algorithm) with truncated zero-mean normal hover
/// displacements, per-axis std = level/3 and norm clamped to level, and
/// reports raw re-evaluated f1/f2 means over the draws.
void cmd_drift(const DriftArgs& args);

// Building blocks shared by the CLI and the test suites.

struct ResultRow {
  std::string algorithm;
  std::string objective;  // f1 | f2 | f3
  SummaryStats stats;
  std::optional<double> p_value;  // vs the baseline (first algorithm)
  char verdict = ' ';
  std::optional<double> gain_pct;  // best vs runner-up, on the best row only
};

/// Per-run representative value: the per-objective minimum over the final
/// front (each objective independently).
Eigen::Vector3d representative(const RunReport& r);

std::vector<ResultRow> build_result_rows(
    const std::vector<std::string>& algorithms,
    const std::map<std::string, std::vector<RunReport>>& reports);

std::string results_to_csv(const std::vector<ResultRow>& rows);

struct DriftRow {
  double level_m = 0;
  double mean_f1_s = 0;
  double mean_f2_j = 0;
  bool local_branch = false;  // local makespan was the f1 maximizer throughout
};

std::vector<DriftRow> drift_table(const Scenario& s, const Solution& chosen,
                                  const std::vector<double>& levels_m,
                                  int draws, std::uint64_t seed);

struct IgdSeries {
  std::string algorithm;
  std::vector<std::vector<double>> per_run;  // [run][iteration]
};

/// IGD of every iteration's archive against the pooled normalized reference.
std::vector<IgdSeries> igd_series(
    const std::vector<std::string>& algorithms,
    const std::map<std::string, std::vector<RunReport>>& reports);

std::string igd_to_csv(const std::vector<IgdSeries>& series);

}  // namespace forestopt
