#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "forestopt/harness.hpp"

using namespace forestopt;

int main(int argc, char** argv) {
  CLI::App app{
      "UAV-assisted forest monitoring deployment optimizer.\n"
      "Set FORESTOPT_WORKERS to cap the run worker pool."};
  app.require_subcommand(1);

  GenerateArgs gen;
  std::string gen_dist = "uniform";
  auto* generate = app.add_subcommand("generate", "Write a scenario JSON file");
  generate->add_option("--uavs", gen.config.uavs, "Number of UAVs")->required();
  generate->add_option("--sns", gen.config.sns, "Number of sensor nodes")->required();
  generate->add_option("--side", gen.config.side, "Area side in metres")
      ->default_val(800.0);
  generate->add_option("--dist", gen_dist, "UAV start distribution")
      ->check(CLI::IsMember({"uniform", "gaussian", "exponential"}));
  generate->add_option("--seed", gen.config.seed, "Generation seed")
      ->default_val(0);
  generate->add_option("--out", gen.out_path, "Output path")->required();

  ExperimentPlan plan;
  std::string plan_kind = "tables";
  std::vector<std::string> plan_algorithms;
  std::string plan_gen_dist = "uniform";
  auto* experiment =
      app.add_subcommand("experiment", "Run algorithms and emit tables");
  experiment->add_option("--kind", plan_kind, "Experiment kind")
      ->check(CLI::IsMember({"tables", "ablation", "igd", "drift", "distributions"}));
  experiment->add_option("--scenario", plan.scenario_path,
                         "Scenario JSON (all kinds except distributions)");
  experiment->add_option("--algorithms", plan_algorithms,
                         "Algorithm names (default depends on kind)")
      ->delimiter(',');
  experiment->add_option("--runs", plan.n_runs, "Runs per algorithm")
      ->default_val(30);
  experiment->add_option("--gmax", plan.base.g_max, "Iterations per run")
      ->default_val(200);
  experiment->add_option("--pop", plan.base.pop, "Population size")
      ->default_val(20);
  experiment->add_option("--seed", plan.base.seed, "Base seed")->default_val(0);
  experiment->add_flag("--diffusion-f,!--no-diffusion-f",
                       plan.base.diffusion_include_cpu_alloc,
                       "Diffusion also moves CPU allocations (default on)");
  experiment->add_flag("--qbl-f", plan.base.qbl_include_cpu_alloc,
                       "QBL also moves CPU allocations (default off)");
  experiment->add_flag("--timing", plan.include_timing,
                       "Embed wall-clock fields in run JSON");
  experiment->add_option("--out-dir", plan.out_dir, "Output directory")
      ->required();
  experiment->add_option("--uavs", plan.gen.uavs, "UAVs (distributions kind)")
      ->default_val(6);
  experiment->add_option("--sns", plan.gen.sns, "SNs (distributions kind)")
      ->default_val(50);
  experiment->add_option("--gen-side", plan.gen.side,
                         "Area side (distributions kind)")
      ->default_val(800.0);

  IgdArgs igd_args;
  auto* igd_cmd = app.add_subcommand("igd", "Per-iteration IGD table");
  igd_cmd->add_option("--experiment", igd_args.experiment_dir,
                      "Experiment directory")->required();
  igd_cmd->add_option("--out", igd_args.out_csv, "Output CSV path");

  DriftArgs drift_args;
  auto* drift_cmd =
      app.add_subcommand("drift", "Hover-drift robustness table");
  drift_cmd->add_option("--experiment", drift_args.experiment_dir,
                        "Experiment directory")->required();
  drift_cmd->add_option("--algorithm", drift_args.algorithm,
                        "Algorithm whose front is perturbed")
      ->default_val("imogwo");
  drift_cmd->add_option("--levels", drift_args.levels_m, "Drift levels in metres")
      ->delimiter(',');
  drift_cmd->add_option("--draws", drift_args.draws, "Perturbation draws per level")
      ->default_val(30);
  drift_cmd->add_option("--seed", drift_args.seed, "Perturbation seed")
      ->default_val(1);
  drift_cmd->add_option("--out", drift_args.out_csv, "Output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen.config.distribution = start_distribution_from_string(gen_dist);
      cmd_generate(gen);
    } else if (experiment->parsed()) {
      plan.kind = kind_from_string(plan_kind);
      for (const auto& name : plan_algorithms)
        plan.algorithms.push_back(variant_from_string(name));
      plan.gen.distribution = start_distribution_from_string(plan_gen_dist);
      plan.gen.seed = plan.base.seed;
      cmd_experiment(plan);
    } else if (igd_cmd->parsed()) {
      cmd_igd(igd_args);
    } else if (drift_cmd->parsed()) {
      cmd_drift(drift_args);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
