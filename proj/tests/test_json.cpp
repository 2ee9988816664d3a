#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "orpool/json_io.hpp"
#include "orpool/validate.hpp"

using namespace orpool;

TEST_CASE("instance JSON round trip") {
  std::mt19937_64 rng(31);
  Instance inst = test::tiny_instance(rng, 3, 2, 6, 7, 0.3, 5, 9);
  Instance back = instance_from_json(to_json(inst));
  CHECK(back.horizon_days == inst.horizon_days);
  CHECK(back.rooms == inst.rooms);
  CHECK(back.bed_stock == inst.bed_stock);
  CHECK(back.shared_fraction == inst.shared_fraction);
  CHECK(back.or_open_cost == inst.or_open_cost);
  CHECK(back.surge_cost == inst.surge_cost);
  CHECK(back.block_bounds == inst.block_bounds);
  REQUIRE(back.num_patients() == inst.num_patients());
  for (int i = 0; i < inst.num_patients(); ++i) {
    CHECK(back.patients[i].specialty == inst.patients[i].specialty);
    CHECK(back.patients[i].earliest_day == inst.patients[i].earliest_day);
    CHECK(back.patients[i].latest_day == inst.patients[i].latest_day);
    CHECK(back.patients[i].mean_duration == inst.patients[i].mean_duration);
    CHECK(back.patients[i].max_duration == inst.patients[i].max_duration);
    CHECK(back.patients[i].waiting_cost_rate == inst.patients[i].waiting_cost_rate);
    CHECK(back.patients[i].eligible_rooms == inst.patients[i].eligible_rooms);
  }
  REQUIRE(back.num_specialties() == inst.num_specialties());
  CHECK(back.specialties[0].mean_duration == inst.specialties[0].mean_duration);
}

TEST_CASE("solution JSON round trip preserves postponements") {
  std::mt19937_64 rng(32);
  Instance inst = test::tiny_instance(rng, 2, 2, 5, 8);
  FirstStageSolution sol = test::random_feasible_solution(inst, rng);
  FirstStageSolution back = solution_from_json(to_json(sol));
  REQUIRE(back.assignment.size() == sol.assignment.size());
  for (size_t i = 0; i < sol.assignment.size(); ++i) {
    CHECK(back.assignment[i].has_value() == sol.assignment[i].has_value());
    if (sol.assignment[i]) CHECK(*back.assignment[i] == *sol.assignment[i]);
  }
  CHECK(back.bed_split == sol.bed_split);
  CHECK(back.block_specialty == sol.block_specialty);
}

TEST_CASE("scenario JSON round trip, with and without carryover") {
  std::mt19937_64 rng(33);
  Instance inst = test::tiny_instance(rng, 2, 2, 4, 5);
  Scenario sc = test::random_scenario(inst, rng);
  Scenario back = scenario_from_json(to_json(sc));
  CHECK(back.durations == sc.durations);
  CHECK(back.los_total_raw == sc.los_total_raw);
  CHECK(back.los == sc.los);
  CHECK(back.carryover == sc.carryover);

  sc.carryover.assign(2 * kDownstreams * 4, 0);
  sc.carryover[3] = 2;
  Scenario back2 = scenario_from_json(to_json(sc));
  CHECK(back2.carryover == sc.carryover);
}

TEST_CASE("scenario bundle JSONL round trip") {
  std::mt19937_64 rng(34);
  Instance inst = test::tiny_instance(rng, 2, 2, 4, 6);
  std::vector<Scenario> bundle;
  for (int k = 0; k < 5; ++k) bundle.push_back(test::random_scenario(inst, rng));
  std::stringstream ss;
  write_scenario_bundle(ss, bundle);
  auto back = read_scenario_bundle(ss);
  REQUIRE(back.size() == bundle.size());
  for (size_t k = 0; k < bundle.size(); ++k) {
    CHECK(back[k].durations == bundle[k].durations);
    CHECK(back[k].los == bundle[k].los);
  }
}

TEST_CASE("schema carries a version stamp") {
  std::mt19937_64 rng(35);
  Instance inst = test::tiny_instance(rng, 1, 1, 3, 1);
  auto j = to_json(inst);
  CHECK(j.at("schema_version").get<int>() == kSchemaVersion);
}
