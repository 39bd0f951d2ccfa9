#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "forestopt/harness.hpp"

using namespace forestopt;
namespace fs = std::filesystem;

namespace {
Scenario tiny_scenario() {
  ScenarioConfig sc;
  sc.uavs = 2;
  sc.sns = 8;
  sc.seed = 9;
  return generate_scenario(sc);
}

RunReport fake_report(double base) {
  RunReport r;
  auto mem = [&](double a, double b, double c) {
    ArchiveMember m;
    m.obj.f1_s = a;
    m.obj.f2_j = b;
    m.obj.f3_hz = c;
    return m;
  };
  r.front.push_back(mem(base + 1.0, base + 20.0, base + 5.0));
  r.front.push_back(mem(base + 3.0, base + 10.0, base + 7.0));
  r.front.push_back(mem(base + 2.0, base + 30.0, base + 1.0));
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_CASE("kind names round-trip") {
  for (ExperimentKind k :
       {ExperimentKind::tables, ExperimentKind::ablation, ExperimentKind::igd,
        ExperimentKind::drift, ExperimentKind::distributions})
    CHECK(kind_from_string(kind_name(k)) == k);
  CHECK_THROWS(kind_from_string("benchmark"));
}

TEST_CASE("default algorithm sets") {
  auto names = [](ExperimentKind k) {
    std::vector<std::string> out;
    for (Variant v : default_algorithms(k)) out.push_back(variant_name(v));
    return out;
  };
  CHECK(names(ExperimentKind::tables) ==
        std::vector<std::string>{"imogwo", "mogwo", "rd", "ud"});
  CHECK(names(ExperimentKind::ablation) ==
        std::vector<std::string>{"mogwo", "mogwo-1", "mogwo-2", "mogwo-3",
                                 "imogwo"});
  CHECK(names(ExperimentKind::igd) == std::vector<std::string>{"imogwo"});
  CHECK(names(ExperimentKind::drift) == std::vector<std::string>{"imogwo"});
  CHECK(names(ExperimentKind::distributions) ==
        std::vector<std::string>{"imogwo", "mogwo"});
}

TEST_CASE("representative takes per-objective minima over the front") {
  RunReport r = fake_report(0.0);
  Eigen::Vector3d rep = representative(r);
  CHECK(rep[0] == 1.0);
  CHECK(rep[1] == 10.0);
  CHECK(rep[2] == 1.0);
}

TEST_CASE("result rows carry stats, p-values and verdicts") {
  std::map<std::string, std::vector<RunReport>> reports;
  for (int i = 0; i < 5; ++i) {
    reports["alpha"].push_back(fake_report(0.1 * i));
    reports["beta"].push_back(fake_report(10.0 + 0.1 * i));
  }
  std::vector<ResultRow> rows = build_result_rows({"alpha", "beta"}, reports);
  REQUIRE(rows.size() == 6);  // 2 algorithms x 3 objectives
  // baseline rows first, no p-value on them
  CHECK(rows[0].algorithm == "alpha");
  CHECK_FALSE(rows[0].p_value.has_value());
  bool beta_seen = false;
  for (const auto& row : rows) {
    if (row.algorithm != "beta") continue;
    beta_seen = true;
    REQUIRE(row.p_value.has_value());
    CHECK(*row.p_value < 0.05);
    CHECK(row.verdict == '+');  // baseline strictly lower on every objective
  }
  CHECK(beta_seen);
  // alpha wins every objective, so gains sit on alpha rows
  for (const auto& row : rows)
    if (row.algorithm == "alpha") CHECK(row.gain_pct.has_value());

  std::string csv = results_to_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "algorithm,objective,mean,std,max,min,p_value,verdict,gain_pct");
  int lines = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++lines;
  CHECK(lines == 6);
}

TEST_CASE("cmd_generate writes a loadable scenario") {
  fs::path dir = fresh_dir("forestopt_gen_test");
  GenerateArgs args;
  args.config.uavs = 2;
  args.config.sns = 6;
  args.config.seed = 5;
  args.out_path = (dir / "scenario.json").string();
  cmd_generate(args);
  std::ifstream in(args.out_path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario s = scenario_from_json(buf.str());
  CHECK(s.m() == 2);
  CHECK(s.k() == 6);
}

TEST_CASE("cmd_experiment produces manifest, runs and results") {
  fs::path dir = fresh_dir("forestopt_exp_test");
  Scenario s = tiny_scenario();
  fs::path scen = dir / "scenario.json";
  {
    std::ofstream out(scen);
    out << scenario_to_json(s);
  }
  ExperimentPlan plan;
  plan.kind = ExperimentKind::tables;
  plan.scenario_path = scen.string();
  plan.algorithms = {Variant::imogwo, Variant::mogwo};
  plan.n_runs = 2;
  plan.base = solver_config(Variant::imogwo, 3);
  plan.base.g_max = 5;
  plan.base.pop = 6;
  plan.out_dir = (dir / "exp").string();
  cmd_experiment(plan);

  std::ifstream mf(dir / "exp" / "manifest.json");
  REQUIRE(mf.good());
  std::stringstream mbuf;
  mbuf << mf.rdbuf();
  const std::string manifest = mbuf.str();
  CHECK(manifest.find("\"kind\"") != std::string::npos);
  CHECK(manifest.find("\"hash\"") != std::string::npos);
  CHECK(manifest.find("imogwo_run1.json") != std::string::npos);
  CHECK(manifest.find("mogwo_run2.json") != std::string::npos);

  int run_files = 0;
  for (const auto& e : fs::directory_iterator(dir / "exp" / "runs")) {
    ++run_files;
    RunReport r = load_report(e.path().string());
    CHECK(static_cast<int>(r.trace.size()) == 5);
    CHECK(r.scenario_digest == scenario_digest(s));
  }
  CHECK(run_files == 4);

  std::ifstream rf(dir / "exp" / "results.csv");
  REQUIRE(rf.good());
  std::string header;
  std::getline(rf, header);
  CHECK(header == "algorithm,objective,mean,std,max,min,p_value,verdict,gain_pct");
  int rows = 0;
  for (std::string line; std::getline(rf, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("igd series spans every iteration and stays finite") {
  Scenario s = tiny_scenario();
  SolverConfig cfg = solver_config(Variant::imogwo, 2);
  cfg.g_max = 8;
  cfg.pop = 6;
  std::map<std::string, std::vector<RunReport>> reports;
  reports["imogwo"] = run_repeated(s, cfg, 2, 2);
  std::vector<IgdSeries> series = igd_series({"imogwo"}, reports);
  REQUIRE(series.size() == 1);
  REQUIRE(series[0].per_run.size() == 2);
  for (const auto& run : series[0].per_run) {
    REQUIRE(run.size() == 8);
    for (double v : run) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
  }
  std::string csv = igd_to_csv(series);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "algorithm,iteration,mean_igd,run_1,run_2");
  int lines = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++lines;
  CHECK(lines == 8);
}

TEST_CASE("drift at level zero is the unperturbed evaluation") {
  Scenario s = tiny_scenario();
  SolverConfig cfg = solver_config(Variant::imogwo, 4);
  cfg.g_max = 10;
  cfg.pop = 6;
  RunReport r = run(s, cfg);
  const ArchiveMember* best = &r.front[0];
  for (const auto& m : r.front)
    if (m.obj.f1_s < best->obj.f1_s) best = &m;

  std::vector<DriftRow> rows =
      drift_table(s, best->sol, {0.0, 0.5}, 10, 1);
  REQUIRE(rows.size() == 2);
  EvalBreakdown detail = evaluate_detail(best->sol, s);
  CHECK(rows[0].level_m == 0.0);
  CHECK(rows[0].mean_f1_s == doctest::Approx(detail.raw[0]).epsilon(1e-12));
  CHECK(rows[0].mean_f2_j == doctest::Approx(detail.raw[1]).epsilon(1e-12));
  CHECK(rows[0].local_branch ==
        (detail.local_makespan_s >= detail.edge_makespan_s));
  CHECK(rows[1].level_m == 0.5);
  CHECK(rows[1].mean_f2_j > 0.0);
}
