#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "forestopt/scenario.hpp"

using namespace forestopt;

TEST_CASE("generation is deterministic and validates its inputs") {
  ScenarioConfig cfg;
  cfg.uavs = 3;
  cfg.sns = 12;
  cfg.seed = 7;
  Scenario a = generate_scenario(cfg);
  Scenario b = generate_scenario(cfg);
  CHECK(scenario_to_json(a) == scenario_to_json(b));
  CHECK(scenario_digest(a) == scenario_digest(b));

  cfg.sns = 2;  // fewer sensors than UAVs
  CHECK_THROWS_AS(generate_scenario(cfg), std::invalid_argument);
  cfg.sns = 12;
  cfg.side = 0;
  CHECK_THROWS_AS(generate_scenario(cfg), std::invalid_argument);
}

TEST_CASE("generated scenarios follow the default setting ranges") {
  ScenarioConfig cfg;
  cfg.uavs = 6;
  cfg.sns = 50;
  cfg.seed = 4;
  Scenario s = generate_scenario(cfg);
  CHECK(s.m() == 6);
  CHECK(s.k() == 50);
  CHECK(s.bounds.p_total_w == doctest::Approx(25.0));
  std::set<double> w1, w2;
  for (const auto& sn : s.sensors) {
    CHECK(sn.position.z() == 0.0);
    CHECK(sn.position.x() >= 0.0);
    CHECK(sn.position.x() <= 800.0);
    w1.insert(sn.task_bits / 1048576.0);
    w2.insert(sn.cycles_per_bit / 100.0);
    CHECK(sn.local_cpu_hz == 1e8);
  }
  for (double v : w1) CHECK(v == std::floor(v));
  for (double v : w2) CHECK(v == std::floor(v));
  CHECK(*w1.rbegin() <= 4.0);
  CHECK(*w2.rbegin() <= 3.0);
  for (const auto& u : s.uavs) {
    CHECK(u.initial_position.z() >= 10.0);
    CHECK(u.initial_position.z() <= 30.0);
  }
}

TEST_CASE("start distributions share the sensor layout") {
  ScenarioConfig cfg;
  cfg.uavs = 4;
  cfg.sns = 20;
  cfg.seed = 11;
  cfg.distribution = StartDistribution::gaussian;
  Scenario g = generate_scenario(cfg);
  cfg.distribution = StartDistribution::exponential;
  Scenario e = generate_scenario(cfg);
  for (int j = 0; j < 20; ++j) {
    CHECK((g.sensors[j].position - e.sensors[j].position).norm() == 0.0);
    CHECK(g.sensors[j].task_bits == e.sensors[j].task_bits);
  }
  bool same_starts = true;
  for (int i = 0; i < 4; ++i)
    same_starts &=
        (g.uavs[i].initial_position - e.uavs[i].initial_position).norm() == 0.0;
  CHECK_FALSE(same_starts);
}

TEST_CASE("distribution names round-trip") {
  for (auto d : {StartDistribution::uniform, StartDistribution::gaussian,
                 StartDistribution::exponential})
    CHECK(start_distribution_from_string(to_string(d)) == d);
  CHECK_THROWS_AS(start_distribution_from_string("banana"),
                  std::invalid_argument);
}

TEST_CASE("scenario JSON round-trip is canonical") {
  ScenarioConfig cfg;
  cfg.uavs = 2;
  cfg.sns = 5;
  cfg.seed = 3;
  Scenario s = generate_scenario(cfg);
  std::string once = scenario_to_json(s);
  Scenario back = scenario_from_json(once);
  CHECK(scenario_to_json(back) == once);
  CHECK(scenario_digest(back) == scenario_digest(s));
}

TEST_CASE("malformed scenario JSON throws") {
  CHECK_THROWS(scenario_from_json("{"));
  CHECK_THROWS(scenario_from_json("{}"));
  CHECK_THROWS(scenario_from_json("[1,2,3]"));
}

TEST_CASE("validate rejects broken structures") {
  ScenarioConfig cfg;
  cfg.uavs = 2;
  cfg.sns = 5;
  Scenario s = generate_scenario(cfg);
  s.sensors[0].task_bits = 0;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
}

TEST_CASE("fnv1a64 pins the canonical hash") {
  CHECK(fnv1a64("") == 14695981039346656037ULL);
  CHECK(fnv1a64("a") == 12638187200555641996ULL);
  CHECK(fnv1a64("ab") != fnv1a64("ba"));
}
