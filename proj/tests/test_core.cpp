#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "orpool/cost.hpp"
#include "orpool/validate.hpp"

using namespace orpool;

namespace {

Instance base_instance() {
  std::mt19937_64 rng(7);
  return test::tiny_instance(rng, 2, 2, 5, 0);
}

Patient make_patient(int id, int spec, int earliest, int latest, int priority) {
  Patient p;
  p.id = id;
  p.specialty = spec;
  p.earliest_day = earliest;
  p.latest_day = latest;
  p.priority = priority;
  p.mean_duration = 100;
  p.max_duration = 150;
  p.waiting_cost_rate = 1000.0 * priority;
  p.postpone_cost = 15000.0 * priority;
  p.eligible_rooms = {0, 1};
  return p;
}

FirstStageSolution empty_solution(const Instance& inst) {
  FirstStageSolution sol;
  sol.assignment.resize(inst.num_patients());
  sol.bed_split.assign(inst.num_specialties(), {0, 0});
  sol.block_specialty.assign(inst.rooms, std::vector<int>(inst.horizon_days, -1));
  return sol;
}

}  // namespace

TEST_CASE("room opening cost: five open blocks") {
  Instance inst = base_instance();
  auto sol = empty_solution(inst);
  sol.block_specialty[0][0] = 0;
  sol.block_specialty[0][1] = 1;
  sol.block_specialty[0][2] = 0;
  sol.block_specialty[1][0] = 1;
  sol.block_specialty[1][4] = 0;
  CHECK(sol.open_room_days() == 5);
  // Hand oracle: 5 * 4437 = 22185.
  CHECK(first_stage_cost(inst, sol) == doctest::Approx(22185).epsilon(1e-12));
}

TEST_CASE("waiting cost: priority-3 patient operated two days late") {
  Instance inst = base_instance();
  inst.patients.push_back(make_patient(0, 0, 1, 4, 3));
  auto sol = empty_solution(inst);
  sol.assignment[0] = Slot{0, 3};  // earliest 1, so 2 days of waiting
  sol.block_specialty[0][3] = 0;
  CostBreakdown cb = first_stage_breakdown(inst, sol);
  CHECK(cb.waiting == doctest::Approx(6000).epsilon(1e-12));  // 3 * 1000 * 2
  CHECK(cb.or_fixed == doctest::Approx(4437).epsilon(1e-12));
  CHECK(cb.postponement == 0);
}

TEST_CASE("postponement cost: optional priority-2 patient postponed") {
  Instance inst = base_instance();
  inst.patients.push_back(make_patient(0, 0, 0, 40, 2));  // latest beyond horizon
  CHECK(!inst.mandatory(inst.patients[0]));
  auto sol = empty_solution(inst);
  CostBreakdown cb = first_stage_breakdown(inst, sol);
  CHECK(cb.postponement == doctest::Approx(30000).epsilon(1e-12));  // 2 * 15000
  CHECK(cb.total() == doctest::Approx(30000).epsilon(1e-12));
}

TEST_CASE("first_stage_cost rejects out-of-window and wrong-room assignments") {
  Instance inst = base_instance();
  inst.patients.push_back(make_patient(0, 0, 2, 3, 1));
  auto sol = empty_solution(inst);
  sol.assignment[0] = Slot{0, 1};  // before earliest
  sol.block_specialty[0][1] = 0;
  CHECK_THROWS_AS(first_stage_cost(inst, sol), std::invalid_argument);

  sol.assignment[0] = Slot{0, 2};
  sol.block_specialty[0][2] = 0;
  CHECK_NOTHROW(first_stage_cost(inst, sol));
}

TEST_CASE("postponing a mandatory patient is rejected") {
  Instance inst = base_instance();
  inst.patients.push_back(make_patient(0, 0, 0, 2, 1));  // latest inside horizon
  CHECK(inst.mandatory(inst.patients[0]));
  auto sol = empty_solution(inst);
  CHECK_THROWS_AS(first_stage_cost(inst, sol), std::invalid_argument);
  auto violations = validate(inst, sol);
  bool tagged = false;
  for (const auto& v : violations) tagged |= (v.tag == "(2)");
  CHECK(tagged);
}

TEST_CASE("bed capacity split: floor/ceil partition covers the stock") {
  Instance inst = base_instance();
  for (double alpha : {0.0, 0.3, 0.5, 0.77, 1.0})
    for (int m : {0, 1, 7, 20, 35}) {
      inst.shared_fraction = {alpha, alpha};
      inst.bed_stock = {m, m};
      for (int h = 0; h < kDownstreams; ++h) {
        CHECK(inst.shared_capacity(h) + inst.nonshared_capacity(h) == m);
        CHECK(inst.shared_capacity(h) >= 0);
        CHECK(inst.nonshared_capacity(h) >= 0);
      }
    }
  // Exact halves: alpha=0.5, M=7 -> 3 shared, 4 non-shared.
  inst.shared_fraction = {0.5, 0.5};
  inst.bed_stock = {7, 7};
  CHECK(inst.shared_capacity(0) == 3);
  CHECK(inst.nonshared_capacity(0) == 4);
}

TEST_CASE("validate tags each first-stage constraint family") {
  std::mt19937_64 rng(11);
  Instance inst = test::tiny_instance(rng, 2, 2, 5, 6);
  auto sol = test::random_feasible_solution(inst, rng);
  REQUIRE(validate(inst, sol).empty());

  SUBCASE("(5): patient in a block of another specialty") {
    int i = -1;
    for (int k = 0; k < inst.num_patients(); ++k)
      if (sol.assignment[k]) { i = k; break; }
    REQUIRE(i >= 0);
    Slot s = *sol.assignment[i];
    sol.block_specialty[s.room][s.day] = 1 - inst.patients[i].specialty;
    bool tagged = false;
    for (const auto& v : validate(inst, sol)) tagged |= (v.tag == "(5)");
    CHECK(tagged);
  }
  SUBCASE("(6): block bounds violated") {
    Instance tight = inst;
    tight.block_bounds[0] = {0, 0};
    FirstStageSolution s2 = sol;
    s2.block_specialty[0][0] = 0;
    bool tagged = false;
    for (const auto& v : validate(tight, s2)) tagged |= (v.tag == "(6)");
    CHECK(tagged);
  }
  SUBCASE("(7): bed split over budget") {
    sol.bed_split[0][0] = inst.nonshared_capacity(0) + 1;
    bool tagged = false;
    for (const auto& v : validate(inst, sol)) tagged |= (v.tag == "(7)");
    CHECK(tagged);
  }
  SUBCASE("domain: ineligible room") {
    Instance narrow = inst;
    int i = -1;
    for (int k = 0; k < narrow.num_patients(); ++k)
      if (sol.assignment[k]) { i = k; break; }
    REQUIRE(i >= 0);
    narrow.patients[i].eligible_rooms = {};
    bool tagged = false;
    for (const auto& v : validate(narrow, sol)) tagged |= (v.tag == "domain");
    CHECK(tagged);
  }
}

TEST_CASE("require_valid throws on an invalid solution") {
  std::mt19937_64 rng(3);
  Instance inst = test::tiny_instance(rng, 2, 2, 4, 4);
  auto sol = test::random_feasible_solution(inst, rng);
  CHECK_NOTHROW(require_valid(inst, sol));
  sol.bed_split[0][0] = 99;
  CHECK_THROWS(require_valid(inst, sol));
}
