#include "doctest.h"

#include <stdexcept>

#include "forestopt/physics.hpp"

using namespace forestopt;

namespace {
doctest::Approx near(double v) { return doctest::Approx(v).epsilon(1e-12); }
}  // namespace

TEST_CASE("forest path loss") {
  CHECK(forest_path_loss(920.0, 100.0) == near(0.07188661938254713));
  CHECK(forest_path_loss(920.0, 20.0) == near(0.058315225578421157));
  CHECK(forest_path_loss(920.0, 0.0) == 0.0);
  CHECK_THROWS_AS(forest_path_loss(920.0, -1.0), std::domain_error);
}

TEST_CASE("free space path loss") {
  CHECK(free_space_path_loss(920.0, 1.0) == near(31.715756546911106));
  CHECK(free_space_path_loss(920.0, 100.0) == near(71.71575654691111));
  CHECK(free_space_path_loss(920.0, 80.0) == near(69.77755628674997));
  CHECK_THROWS_AS(free_space_path_loss(920.0, 0.0), std::domain_error);
}

TEST_CASE("split path loss sums the canopy and free segments") {
  ChannelParams ch;  // 920 MHz, 20% canopy
  CHECK(split_path_loss(ch, 100.0) ==
        near(forest_path_loss(920.0, 20.0) + free_space_path_loss(920.0, 80.0)));
  CHECK(split_path_loss(ch, 100.0) == near(69.8358715123284));
}

TEST_CASE("link rate") {
  ChannelParams ch;
  double pl = split_path_loss(ch, 100.0);
  CHECK(link_rate(0.5, pl, ch, true) == near(18986093.651138533));
  CHECK(link_rate(0.5, pl, ch, false) == 0.0);
  CHECK(link_rate(1.0, pl, ch, true) > link_rate(0.1, pl, ch, true));
}

TEST_CASE("link budget composes the pieces") {
  ChannelParams ch;
  LinkBudget lb = link_budget(ch, 0.5, 100.0, true);
  CHECK(lb.pl_total_db == near(split_path_loss(ch, 100.0)));
  CHECK(lb.pl_forest_db == near(forest_path_loss(920.0, 20.0)));
  CHECK(lb.pl_free_db == near(free_space_path_loss(920.0, 80.0)));
  CHECK(lb.rate_bps == near(link_rate(0.5, lb.pl_total_db, ch, true)));
}

TEST_CASE("computing delays") {
  CHECK(local_delay(1048576.0, 100.0, 1e8) == near(1.048576));
  CHECK(local_delay(0.0, 100.0, 1e8) == 0.0);
  CHECK_THROWS_AS(local_delay(1.0, 100.0, 0.0), std::domain_error);

  CHECK(edge_delay(1048576.0, 100.0, 1.9e7, 1e9) == near(0.16004581052631578));
  CHECK(edge_delay(0.0, 100.0, 0.0, 1e9) == 0.0);
  CHECK_THROWS_AS(edge_delay(1.0, 100.0, 0.0, 1e9), std::domain_error);
}

TEST_CASE("propulsion power") {
  EnergyParams e;
  CHECK(propulsion_power(0.0, e) == near(168.49));
  CHECK(propulsion_power(2.0, e) == near(168.62922664499976));
  CHECK(propulsion_power(6.0, e) == near(188.23838470758326));
  CHECK(propulsion_power(10.0, e) == near(245.48661250492333));
  CHECK(parasite_power(10.0, e) == near(9.242624999999999));
  CHECK(propulsion_power(10.0, e) ==
        near(blade_power(10.0, e) + induced_power(10.0, e) +
             parasite_power(10.0, e)));
}

TEST_CASE("motion plan splits vertical then horizontal") {
  EnergyParams e;
  MotionPlan up = motion_plan({0, 0, 10}, {0, 0, 20}, e);
  CHECK(up.vertical_delta_m == near(10.0));
  CHECK(up.horizontal_dist_m == 0.0);
  REQUIRE(up.segments.size() == 1);
  CHECK(up.segments[0].speed_ms == near(6.0));
  CHECK(up.segments[0].duration_s == near(10.0 / 6.0));

  MotionPlan move = motion_plan({0, 0, 20}, {30, 40, 10}, e);
  CHECK(move.vertical_delta_m == near(-10.0));
  CHECK(move.horizontal_dist_m == near(50.0));
  REQUIRE(move.segments.size() == 2);
  CHECK(move.segments[0].speed_ms == near(2.0));
  CHECK(move.segments[1].speed_ms == near(10.0));
}

TEST_CASE("motion energy") {
  EnergyParams e;
  CHECK(motion_energy({5, 5, 15}, {5, 5, 15}, 2.0, e) == 0.0);
  CHECK(motion_energy({0, 0, 10}, {0, 0, 20}, 2.0, e) ==
        near(509.73064117930545));
  CHECK(motion_energy({0, 0, 20}, {0, 0, 10}, 2.0, e) ==
        near(647.1461332249988));
  CHECK(motion_energy({0, 0, 10}, {100, 0, 10}, 2.0, e) ==
        near(2454.8661250492332));
  // one full relocation = vertical leg + horizontal leg + potential change
  CHECK(motion_energy({0, 0, 10}, {100, 0, 20}, 2.0, e) ==
        near(509.73064117930545 + 2454.8661250492332));
}
