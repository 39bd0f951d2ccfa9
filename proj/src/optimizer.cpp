#include "forestopt/optimizer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace forestopt {

using nlohmann::json;

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::rd: return "rd";
    case Variant::ud: return "ud";
    case Variant::mogwo: return "mogwo";
    case Variant::mogwo_diffusion: return "mogwo-1";
    case Variant::mogwo_qbl: return "mogwo-2";
    case Variant::mogwo_discrete: return "mogwo-3";
    case Variant::imogwo: return "imogwo";
  }
  throw std::logic_error("unhandled variant");
}

Variant variant_from_string(const std::string& s) {
  if (s == "rd") return Variant::rd;
  if (s == "ud") return Variant::ud;
  if (s == "mogwo") return Variant::mogwo;
  if (s == "mogwo-1") return Variant::mogwo_diffusion;
  if (s == "mogwo-2") return Variant::mogwo_qbl;
  if (s == "mogwo-3") return Variant::mogwo_discrete;
  if (s == "imogwo") return Variant::imogwo;
  throw std::invalid_argument("unknown algorithm: " + s);
}

SolverConfig solver_config(Variant v, std::uint64_t seed) {
  SolverConfig c;
  c.variant = v;
  c.seed = seed;
  c.use_diffusion = v == Variant::imogwo || v == Variant::mogwo_diffusion;
  c.use_qbl = v == Variant::imogwo || v == Variant::mogwo_qbl;
  c.use_discrete = v == Variant::imogwo || v == Variant::mogwo_discrete;
  return c;
}

namespace {

void check_config(const SolverConfig& cfg) {
  auto req = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("solver config: ") + msg);
  };
  req(cfg.g_max >= 1, "g_max must be >= 1");
  req(cfg.pop >= 2, "pop must be >= 2");
  req(cfg.archive_capacity >= 1, "archive capacity must be >= 1");
  req(cfg.grid_divisions >= 1, "grid divisions must be >= 1");
  req(cfg.sigma1 > 0 && cfg.sigma1 < cfg.sigma2 && cfg.sigma2 < 1,
      "need 0 < sigma1 < sigma2 < 1");
  req(cfg.penalty_c > 1, "penalty must exceed 1");
}

std::vector<ArchiveMember> as_members(const std::vector<Solution>& pop,
                                      const std::vector<ObjectiveVector>& obj) {
  std::vector<ArchiveMember> out;
  out.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) out.push_back({pop[i], obj[i]});
  return out;
}

Eigen::VectorXi random_assign(int k, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> uav(1, m);
  Eigen::VectorXi a(k);
  for (int j = 0; j < k; ++j) a[j] = uav(rng);
  return a;
}

Solution ud_solution(const Scenario& s, std::mt19937_64& rng) {
  const Bounds& b = s.bounds;
  int m = s.m(), k = s.k();
  int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(m)))));
  int cols = (m + rows - 1) / rows;
  double side_x = (b.xy_max - b.xy_min) / cols;
  double side_y = (b.xy_max - b.xy_min) / rows;
  Solution sol;
  sol.q.resize(m, 3);
  for (int i = 0; i < m; ++i) {
    int r = i / cols, c = i % cols;
    sol.q.row(i) << b.xy_min + (c + 0.5) * side_x, b.xy_min + (r + 0.5) * side_y,
        (b.z_min + b.z_max) / 2.0;
  }
  sol.p = Eigen::VectorXd::Constant(k, b.p_total_w / k);
  sol.f_alloc = Eigen::VectorXd::Constant(k, (b.f_u_min + b.f_u_max) / 2.0);
  sol.c_offload.resize(k);
  for (int j = 0; j < k; ++j) sol.c_offload[j] = s.sensors[j].task_bits / 2.0;
  sol.assign = random_assign(k, m, rng);
  repair(sol, s);
  return sol;
}

IterationTrace snapshot(const Archive& arch, double wall_ms) {
  IterationTrace t;
  t.wall_ms = wall_ms;
  if (arch.empty()) {
    t.minima.setConstant(std::numeric_limits<double>::infinity());
    return t;
  }
  t.archive_objectives.reserve(arch.size());
  for (const auto& m : arch.members())
    t.archive_objectives.push_back(m.obj.values());
  t.minima = t.archive_objectives.front();
  for (const auto& v : t.archive_objectives) t.minima = t.minima.cwiseMin(v);
  return t;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

RunReport run(const Scenario& s, const SolverConfig& cfg) {
  validate(s);
  check_config(cfg);

  RunReport rep;
  rep.config = cfg;
  rep.scenario_digest = scenario_digest(s);
  rep.m = s.m();
  rep.k = s.k();

  std::mt19937_64 rng(cfg.seed);
  auto t0 = std::chrono::steady_clock::now();

  if (cfg.variant == Variant::rd || cfg.variant == Variant::ud) {
    std::vector<ArchiveMember> pool;
    if (cfg.variant == Variant::rd) {
      for (int i = 0; i < cfg.pop; ++i) {
        Solution sol = random_solution(s, rng);
        pool.push_back({sol, evaluate(sol, s, cfg.penalty_c)});
      }
    } else {
      Solution sol = ud_solution(s, rng);
      pool.push_back({sol, evaluate(sol, s, cfg.penalty_c)});
    }
    Archive arch(cfg.archive_capacity, cfg.grid_divisions);
    arch = archive_update(arch, pool, rng);
    IterationTrace row = snapshot(arch, ms_since(t0));
    rep.trace.assign(cfg.g_max, row);
    rep.front = arch.members();
    rep.total_wall_ms = ms_since(t0);
    return rep;
  }

  std::vector<Solution> pop(cfg.pop);
  std::vector<ObjectiveVector> obj(cfg.pop);
  for (int i = 0; i < cfg.pop; ++i) {
    pop[i] = random_solution(s, rng);
    obj[i] = evaluate(pop[i], s, cfg.penalty_c);
  }
  Archive arch(cfg.archive_capacity, cfg.grid_divisions);
  arch = archive_update(arch, as_members(pop, obj), rng);

  for (int it = 1; it <= cfg.g_max; ++it) {
    auto it0 = std::chrono::steady_clock::now();

    std::array<ArchiveMember, 3> leaders;
    if (!arch.empty()) {
      leaders = select_leaders(arch, rng);
    } else {
      Archive fallback(cfg.archive_capacity, cfg.grid_divisions);
      fallback = archive_update(fallback, as_members(pop, obj), rng);
      leaders = select_leaders(fallback, rng);
    }

    for (int i = 0; i < cfg.pop; ++i) {
      Solution cand = gwo_update(pop[i], leaders[0].sol, leaders[1].sol,
                                 leaders[2].sol, it, cfg.g_max, s, rng);
      obj[i] = evaluate(cand, s, cfg.penalty_c);
      pop[i] = std::move(cand);
    }

    for (int i = 0; i < cfg.pop; ++i) {
      Solution cand = pop[i];
      cand.assign = cfg.use_discrete
                        ? discrete_update(pop[i].assign, arch, s.m(),
                                          cfg.sigma1, cfg.sigma2, rng)
                        : random_assign(s.k(), s.m(), rng);
      ObjectiveVector cobj = evaluate(cand, s, cfg.penalty_c);
      if (keep_better(obj[i], cobj, rng)) {
        pop[i] = std::move(cand);
        obj[i] = cobj;
      }
    }

    if (cfg.use_qbl) {
      for (int i = 0; i < cfg.pop; ++i) {
        Solution cand = qbl_update(pop[i], s, rng, cfg.qbl_include_cpu_alloc);
        ObjectiveVector cobj = evaluate(cand, s, cfg.penalty_c);
        if (keep_better(obj[i], cobj, rng)) {
          pop[i] = std::move(cand);
          obj[i] = cobj;
        }
      }
    }

    arch = archive_update(arch, as_members(pop, obj), rng);

    if (cfg.use_diffusion && !arch.empty()) {
      std::vector<Solution> moved = diffusion_update(
          arch.members(), it, cfg.g_max, s, rng, cfg.diffusion_include_cpu_alloc);
      std::vector<ArchiveMember> chosen;
      chosen.reserve(moved.size());
      for (std::size_t i = 0; i < moved.size(); ++i) {
        ObjectiveVector mobj = evaluate(moved[i], s, cfg.penalty_c);
        if (keep_better(arch.members()[i].obj, mobj, rng))
          chosen.push_back({std::move(moved[i]), mobj});
        else
          chosen.push_back(arch.members()[i]);
      }
      arch = archive_update(arch, chosen, rng);
    }

    rep.trace.push_back(snapshot(arch, ms_since(it0)));
  }

  rep.front = arch.members();
  rep.total_wall_ms = ms_since(t0);
  return rep;
}

std::vector<RunReport> run_repeated(const Scenario& s, const SolverConfig& cfg,
                                    int n_runs, std::uint64_t base_seed) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("FORESTOPT_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 1) workers = static_cast<unsigned>(v);
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_runs));

  std::vector<RunReport> out(n_runs);
  std::vector<std::exception_ptr> errors(n_runs);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < n_runs; i = next.fetch_add(1)) {
      try {
        SolverConfig c = cfg;
        c.seed = base_seed + static_cast<std::uint64_t>(i);
        out[i] = run(s, c);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& th : threads) th.join();

  for (int i = 0; i < n_runs; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("run with seed " +
                               std::to_string(base_seed + i) +
                               " failed: " + e.what());
    }
  }
  return out;
}

namespace {

json config_to_json(const SolverConfig& c) {
  return json{{"variant", variant_name(c.variant)},
              {"g_max", c.g_max},
              {"pop", c.pop},
              {"archive_capacity", c.archive_capacity},
              {"grid_divisions", c.grid_divisions},
              {"sigma1", c.sigma1},
              {"sigma2", c.sigma2},
              {"penalty_c", c.penalty_c},
              {"use_diffusion", c.use_diffusion},
              {"use_qbl", c.use_qbl},
              {"use_discrete", c.use_discrete},
              {"diffusion_include_cpu_alloc", c.diffusion_include_cpu_alloc},
              {"qbl_include_cpu_alloc", c.qbl_include_cpu_alloc},
              {"seed", c.seed}};
}

SolverConfig config_from_json(const json& j) {
  SolverConfig c;
  c.variant = variant_from_string(j.at("variant").get<std::string>());
  c.g_max = j.at("g_max").get<int>();
  c.pop = j.at("pop").get<int>();
  c.archive_capacity = j.at("archive_capacity").get<int>();
  c.grid_divisions = j.at("grid_divisions").get<int>();
  c.sigma1 = j.at("sigma1").get<double>();
  c.sigma2 = j.at("sigma2").get<double>();
  c.penalty_c = j.at("penalty_c").get<double>();
  c.use_diffusion = j.at("use_diffusion").get<bool>();
  c.use_qbl = j.at("use_qbl").get<bool>();
  c.use_discrete = j.at("use_discrete").get<bool>();
  c.diffusion_include_cpu_alloc = j.at("diffusion_include_cpu_alloc").get<bool>();
  c.qbl_include_cpu_alloc = j.at("qbl_include_cpu_alloc").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json objectives_to_json(const ObjectiveVector& o) {
  return json{{"f1_s", o.f1_s},
              {"f2_j", o.f2_j},
              {"f3_hz", o.f3_hz},
              {"feasible", o.feasible},
              {"penalized", o.penalized}};
}

ObjectiveVector objectives_from_json(const json& j) {
  ObjectiveVector o;
  o.f1_s = j.at("f1_s").get<double>();
  o.f2_j = j.at("f2_j").get<double>();
  o.f3_hz = j.at("f3_hz").get<double>();
  o.feasible = j.at("feasible").get<bool>();
  o.penalized = j.at("penalized").get<bool>();
  return o;
}

}  // namespace

std::string config_to_json_string(const SolverConfig& c) {
  return config_to_json(c).dump();
}

std::string report_to_json(const RunReport& r, bool include_timing) {
  json j;
  j["config"] = config_to_json(r.config);
  j["scenario_digest"] = r.scenario_digest;
  j["m"] = r.m;
  j["k"] = r.k;
  json front = json::array();
  for (const auto& m : r.front) {
    json member;
    member["objectives"] = objectives_to_json(m.obj);
    Eigen::VectorXd flat = flatten(m.sol);
    member["solution"] = std::vector<double>(flat.data(), flat.data() + flat.size());
    front.push_back(std::move(member));
  }
  j["front"] = std::move(front);
  json trace = json::array();
  for (const auto& row : r.trace) {
    json t;
    json arch = json::array();
    for (const auto& v : row.archive_objectives)
      arch.push_back(json::array({v[0], v[1], v[2]}));
    t["archive"] = std::move(arch);
    t["minima"] = json::array({row.minima[0], row.minima[1], row.minima[2]});
    if (include_timing) t["wall_ms"] = row.wall_ms;
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  if (include_timing) j["total_wall_ms"] = r.total_wall_ms;
  return j.dump();
}

RunReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("report json: ") + e.what());
  }
  RunReport r;
  r.config = config_from_json(j.at("config"));
  r.scenario_digest = j.at("scenario_digest").get<std::uint64_t>();
  r.m = j.at("m").get<int>();
  r.k = j.at("k").get<int>();
  for (const auto& member : j.at("front")) {
    ArchiveMember am;
    am.obj = objectives_from_json(member.at("objectives"));
    std::vector<double> flat = member.at("solution").get<std::vector<double>>();
    Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size()));
    am.sol = unflatten(x, r.m, r.k);
    r.front.push_back(std::move(am));
  }
  for (const auto& t : j.at("trace")) {
    IterationTrace row;
    for (const auto& v : t.at("archive"))
      row.archive_objectives.push_back(
          {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    const auto& mn = t.at("minima");
    row.minima = {mn[0].get<double>(), mn[1].get<double>(), mn[2].get<double>()};
    if (t.contains("wall_ms")) row.wall_ms = t["wall_ms"].get<double>();
    r.trace.push_back(std::move(row));
  }
  if (j.contains("total_wall_ms"))
    r.total_wall_ms = j["total_wall_ms"].get<double>();
  return r;
}

void save_report(const RunReport& r, const std::string& path,
                 bool include_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << report_to_json(r, include_timing) << '\n';
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

}  // namespace forestopt
