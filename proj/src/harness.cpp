#include "forestopt/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;

namespace forestopt {

using nlohmann::json;

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::tables: return "tables";
    case ExperimentKind::ablation: return "ablation";
    case ExperimentKind::igd: return "igd";
    case ExperimentKind::drift: return "drift";
    case ExperimentKind::distributions: return "distributions";
  }
  throw std::logic_error("unhandled experiment kind");
}

ExperimentKind kind_from_string(const std::string& s) {
  if (s == "tables") return ExperimentKind::tables;
  if (s == "ablation") return ExperimentKind::ablation;
  if (s == "igd") return ExperimentKind::igd;
  if (s == "drift") return ExperimentKind::drift;
  if (s == "distributions") return ExperimentKind::distributions;
  throw std::invalid_argument("unknown experiment kind: " + s);
}

std::vector<Variant> default_algorithms(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::tables:
      return {Variant::imogwo, Variant::mogwo, Variant::rd, Variant::ud};
    case ExperimentKind::ablation:
      return {Variant::mogwo, Variant::mogwo_diffusion, Variant::mogwo_qbl,
              Variant::mogwo_discrete, Variant::imogwo};
    case ExperimentKind::igd:
    case ExperimentKind::drift:
      return {Variant::imogwo};
    case ExperimentKind::distributions:
      return {Variant::imogwo, Variant::mogwo};
  }
  throw std::logic_error("unhandled experiment kind");
}

void cmd_generate(const GenerateArgs& args) {
  Scenario s = generate_scenario(args.config);
  save_scenario(s, args.out_path);
}

Eigen::Vector3d representative(const RunReport& r) {
  if (r.front.empty()) throw std::runtime_error("run report has an empty front");
  Eigen::Vector3d rep = r.front.front().obj.values();
  for (const auto& m : r.front) rep = rep.cwiseMin(m.obj.values());
  return rep;
}

namespace {

std::string fmt(double v) { return json(v).dump(); }

std::vector<double> objective_sample(const std::vector<RunReport>& runs,
                                     int objective) {
  std::vector<double> xs;
  xs.reserve(runs.size());
  for (const auto& r : runs) xs.push_back(representative(r)[objective]);
  return xs;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string(what) + " " + path + ": " + e.what());
  }
  return j;
}

}  // namespace

std::vector<ResultRow> build_result_rows(
    const std::vector<std::string>& algorithms,
    const std::map<std::string, std::vector<RunReport>>& reports) {
  if (algorithms.empty()) throw std::invalid_argument("no algorithms");
  std::string baseline = algorithms.front();
  if (std::find(algorithms.begin(), algorithms.end(), "imogwo") !=
      algorithms.end())
    baseline = "imogwo";

  static const char* kObjectives[3] = {"f1", "f2", "f3"};
  std::map<std::string, std::array<std::vector<double>, 3>> samples;
  for (const auto& name : algorithms) {
    auto it = reports.find(name);
    if (it == reports.end())
      throw std::invalid_argument("no reports for algorithm: " + name);
    for (int o = 0; o < 3; ++o)
      samples[name][o] = objective_sample(it->second, o);
  }

  std::vector<ResultRow> rows;
  for (const auto& name : algorithms) {
    for (int o = 0; o < 3; ++o) {
      ResultRow row;
      row.algorithm = name;
      row.objective = kObjectives[o];
      row.stats = summarize(samples[name][o]);
      if (name != baseline && samples[name][o].size() >= 2 &&
          samples[baseline][o].size() >= 2) {
        WilcoxonResult w =
            wilcoxon_rank_sum(samples[baseline][o], samples[name][o]);
        row.p_value = w.p_value;
        row.verdict = w.verdict;
      }
      rows.push_back(std::move(row));
    }
  }

  // Gain of the best mean over the runner-up, reported on the best row.
  if (algorithms.size() >= 2) {
    for (int o = 0; o < 3; ++o) {
      std::vector<std::pair<double, std::string>> means;
      for (const auto& name : algorithms)
        means.push_back({summarize(samples[name][o]).mean, name});
      std::sort(means.begin(), means.end());
      if (means[1].first == 0) continue;
      double gain = gain_percent(means[0].first, means[1].first);
      for (auto& row : rows)
        if (row.algorithm == means[0].second && row.objective == kObjectives[o])
          row.gain_pct = gain;
    }
  }
  return rows;
}

std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "algorithm,objective,mean,std,max,min,p_value,verdict,gain_pct\n";
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.objective << ',' << fmt(r.stats.mean) << ','
        << fmt(r.stats.stddev) << ',' << fmt(r.stats.max) << ','
        << fmt(r.stats.min) << ',';
    if (r.p_value) out << fmt(*r.p_value);
    out << ',';
    if (r.verdict != ' ') out << r.verdict;
    out << ',';
    if (r.gain_pct) out << fmt(*r.gain_pct);
    out << '\n';
  }
  return out.str();
}

std::vector<DriftRow> drift_table(const Scenario& s, const Solution& chosen,
                                  const std::vector<double>& levels_m,
                                  int draws, std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("draws must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<DriftRow> rows;
  for (double level : levels_m) {
    if (level < 0) throw std::invalid_argument("drift level must be >= 0");
    DriftRow row;
    row.level_m = level;
    row.local_branch = true;
    double sum_f1 = 0, sum_f2 = 0;
    for (int d = 0; d < draws; ++d) {
      Solution pert = chosen;
      double std_axis = level / 3.0;
      for (int i = 0; i < pert.m(); ++i) {
        Eigen::Vector3d disp{gauss(rng) * std_axis, gauss(rng) * std_axis,
                             gauss(rng) * std_axis};
        double norm = disp.norm();
        if (norm > level && norm > 0) disp *= level / norm;
        pert.q.row(i) += disp.transpose();
      }
      EvalBreakdown detail = evaluate_detail(pert, s);
      sum_f1 += detail.raw[0];
      sum_f2 += detail.raw[1];
      if (detail.local_makespan_s < detail.edge_makespan_s)
        row.local_branch = false;
    }
    row.mean_f1_s = sum_f1 / draws;
    row.mean_f2_j = sum_f2 / draws;
    rows.push_back(row);
  }
  return rows;
}

std::vector<IgdSeries> igd_series(
    const std::vector<std::string>& algorithms,
    const std::map<std::string, std::vector<RunReport>>& reports) {
  std::vector<Eigen::Vector3d> pool;
  for (const auto& name : algorithms) {
    auto it = reports.find(name);
    if (it == reports.end())
      throw std::invalid_argument("no reports for algorithm: " + name);
    for (const auto& run : it->second)
      for (const auto& m : run.front) pool.push_back(m.obj.values());
  }
  if (pool.empty()) throw std::invalid_argument("no front points available");

  std::vector<Eigen::Vector3d> nd;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pool.size() && !dominated; ++j)
      dominated = j != i && dominates(pool[j], pool[i]);
    bool dup = false;
    for (const auto& kept : nd)
      if ((kept.array() == pool[i].array()).all()) {
        dup = true;
        break;
      }
    if (!dominated && !dup) nd.push_back(pool[i]);
  }
  NormalizedFront ref = normalize_front(nd);

  auto map_point = [&](const Eigen::Vector3d& v) {
    Eigen::Vector3d p;
    for (int i = 0; i < 3; ++i) {
      double span = ref.maxs[i] - ref.mins[i];
      p[i] = span > 0 ? (v[i] - ref.mins[i]) / span : 0.0;
    }
    return p;
  };

  std::vector<IgdSeries> out;
  for (const auto& name : algorithms) {
    IgdSeries series;
    series.algorithm = name;
    for (const auto& run : reports.at(name)) {
      std::vector<double> curve;
      curve.reserve(run.trace.size());
      for (const auto& row : run.trace) {
        std::vector<Eigen::Vector3d> front;
        front.reserve(row.archive_objectives.size());
        for (const auto& v : row.archive_objectives) front.push_back(map_point(v));
        curve.push_back(igd(front, ref.points));
      }
      series.per_run.push_back(std::move(curve));
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::string igd_to_csv(const std::vector<IgdSeries>& series) {
  std::size_t n_runs = 0;
  for (const auto& s : series) n_runs = std::max(n_runs, s.per_run.size());
  std::ostringstream out;
  out << "algorithm,iteration,mean_igd";
  for (std::size_t r = 1; r <= n_runs; ++r) out << ",run_" << r;
  out << '\n';
  for (const auto& s : series) {
    if (s.per_run.empty()) continue;
    std::size_t iters = s.per_run.front().size();
    for (std::size_t it = 0; it < iters; ++it) {
      double sum = 0;
      for (const auto& curve : s.per_run) sum += curve[it];
      out << s.algorithm << ',' << (it + 1) << ','
          << fmt(sum / s.per_run.size());
      for (const auto& curve : s.per_run) out << ',' << fmt(curve[it]);
      out << '\n';
    }
  }
  return out.str();
}

namespace {

struct LoadedExperiment {
  json manifest;
  std::vector<std::string> algorithms;
  std::map<std::string, std::vector<RunReport>> reports;
};

LoadedExperiment load_experiment(const std::string& dir) {
  LoadedExperiment ex;
  ex.manifest = read_json_file(dir + "/manifest.json", "manifest");
  if (ex.manifest.at("kind").get<std::string>() == "distributions")
    throw std::invalid_argument(
        "analysis over a distributions experiment is not supported; point at "
        "one of its per-distribution sub-experiments");
  for (const auto& a : ex.manifest.at("algorithms"))
    ex.algorithms.push_back(a.get<std::string>());
  for (const auto& entry : ex.manifest.at("runs")) {
    std::string file = dir + "/" + entry.at("file").get<std::string>();
    if (!fs::exists(file))
      throw std::runtime_error("missing run file: " + file);
    ex.reports[entry.at("algorithm").get<std::string>()].push_back(
        load_report(file));
  }
  return ex;
}

void run_algorithms_into(const Scenario& scenario, const ExperimentPlan& plan,
                         const std::vector<Variant>& algorithms,
                         const std::string& prefix, json& manifest_runs,
                         std::map<std::string, std::vector<RunReport>>& by_name) {
  for (Variant v : algorithms) {
    SolverConfig cfg = solver_config(v, plan.base.seed);
    cfg.g_max = plan.base.g_max;
    cfg.pop = plan.base.pop;
    cfg.archive_capacity = plan.base.archive_capacity;
    cfg.grid_divisions = plan.base.grid_divisions;
    cfg.sigma1 = plan.base.sigma1;
    cfg.sigma2 = plan.base.sigma2;
    cfg.penalty_c = plan.base.penalty_c;
    cfg.diffusion_include_cpu_alloc = plan.base.diffusion_include_cpu_alloc;
    cfg.qbl_include_cpu_alloc = plan.base.qbl_include_cpu_alloc;
    std::vector<RunReport> runs =
        run_repeated(scenario, cfg, plan.n_runs, plan.base.seed);
    std::string name = variant_name(v);
    for (int i = 0; i < plan.n_runs; ++i) {
      std::string rel = "runs/" + prefix + name + "_run" + std::to_string(i + 1) + ".json";
      save_report(runs[i], plan.out_dir + "/" + rel, plan.include_timing);
      manifest_runs.push_back(json{{"algorithm", name},
                                   {"run", i + 1},
                                   {"seed", runs[i].config.seed},
                                   {"file", rel}});
    }
    by_name[name] = std::move(runs);
  }
}

std::vector<std::string> names_of(const std::vector<Variant>& vs) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (Variant v : vs) out.push_back(variant_name(v));
  return out;
}

}  // namespace

void cmd_experiment(const ExperimentPlan& plan) {
  if (plan.n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  if (plan.out_dir.empty()) throw std::invalid_argument("output directory required");
  std::vector<Variant> algorithms =
      plan.algorithms.empty() ? default_algorithms(plan.kind) : plan.algorithms;

  fs::create_directories(plan.out_dir + "/runs");

  json manifest;
  manifest["kind"] = kind_name(plan.kind);
  manifest["algorithms"] = names_of(algorithms);
  manifest["n_runs"] = plan.n_runs;
  manifest["base_seed"] = plan.base.seed;
  json runs = json::array();

  std::string hash_input;
  for (Variant v : algorithms) {
    SolverConfig cfg = solver_config(v, plan.base.seed);
    cfg.g_max = plan.base.g_max;
    cfg.pop = plan.base.pop;
    hash_input += config_to_json_string(cfg);
  }

  if (plan.kind == ExperimentKind::distributions) {
    json scenarios = json::array();
    for (StartDistribution dist :
         {StartDistribution::gaussian, StartDistribution::exponential}) {
      ScenarioConfig gen = plan.gen;
      gen.distribution = dist;
      Scenario scenario = generate_scenario(gen);
      std::string tag = to_string(dist);
      save_scenario(scenario, plan.out_dir + "/scenario_" + tag + ".json");
      scenarios.push_back(json{{"file", "scenario_" + tag + ".json"},
                               {"distribution", tag},
                               {"digest", scenario_digest(scenario)}});
      hash_input += scenario_to_json(scenario);
      std::map<std::string, std::vector<RunReport>> by_name;
      run_algorithms_into(scenario, plan, algorithms, tag + "_", runs, by_name);
      auto rows = build_result_rows(names_of(algorithms), by_name);
      write_file(plan.out_dir + "/results_" + tag + ".csv", results_to_csv(rows));
    }
    manifest["scenarios"] = std::move(scenarios);
  } else {
    if (plan.scenario_path.empty())
      throw std::invalid_argument("scenario path required for this experiment kind");
    Scenario scenario = load_scenario(plan.scenario_path);
    save_scenario(scenario, plan.out_dir + "/scenario.json");
    manifest["scenario"] =
        json{{"file", "scenario.json"}, {"digest", scenario_digest(scenario)}};
    hash_input += scenario_to_json(scenario);
    std::map<std::string, std::vector<RunReport>> by_name;
    run_algorithms_into(scenario, plan, algorithms, "", runs, by_name);
    auto rows = build_result_rows(names_of(algorithms), by_name);
    write_file(plan.out_dir + "/results.csv", results_to_csv(rows));
  }

  manifest["runs"] = std::move(runs);
  manifest["hash"] = fnv1a64(hash_input);
  write_file(plan.out_dir + "/manifest.json", manifest.dump(2) + "\n");

  if (plan.kind == ExperimentKind::igd)
    cmd_igd({plan.out_dir, plan.out_dir + "/igd.csv"});
  if (plan.kind == ExperimentKind::drift) {
    DriftArgs d;
    d.experiment_dir = plan.out_dir;
    d.out_csv = plan.out_dir + "/drift.csv";
    cmd_drift(d);
  }
}

void cmd_igd(const IgdArgs& args) {
  LoadedExperiment ex = load_experiment(args.experiment_dir);
  auto series = igd_series(ex.algorithms, ex.reports);
  std::string out = args.out_csv.empty() ? args.experiment_dir + "/igd.csv"
                                         : args.out_csv;
  write_file(out, igd_to_csv(series));
}

void cmd_drift(const DriftArgs& args) {
  LoadedExperiment ex = load_experiment(args.experiment_dir);
  auto it = ex.reports.find(args.algorithm);
  if (it == ex.reports.end())
    throw std::invalid_argument("algorithm not in experiment: " + args.algorithm);

  std::string scenario_file =
      args.experiment_dir + "/" +
      ex.manifest.at("scenario").at("file").get<std::string>();
  Scenario scenario = load_scenario(scenario_file);

  const Solution* chosen = nullptr;
  double best_f1 = std::numeric_limits<double>::infinity();
  for (const auto& run : it->second) {
    for (const auto& m : run.front) {
      if (m.obj.f1_s < best_f1) {
        best_f1 = m.obj.f1_s;
        chosen = &m.sol;
      }
    }
  }
  if (!chosen) throw std::runtime_error("no front members found for drift");

  auto rows = drift_table(scenario, *chosen, args.levels_m, args.draws, args.seed);
  std::ostringstream out;
  out << "level_m,mean_f1_s,mean_f2_j,local_branch\n";
  for (const auto& r : rows) {
    out << fmt(r.level_m) << ',' << fmt(r.mean_f1_s) << ',' << fmt(r.mean_f2_j)
        << ',' << (r.local_branch ? 1 : 0) << '\n';
  }
  std::string path = args.out_csv.empty() ? args.experiment_dir + "/drift.csv"
                                          : args.out_csv;
  write_file(path, out.str());
}

}  // namespace forestopt
