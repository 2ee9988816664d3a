#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "orpool/cost.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/milp/backend.hpp"
#include "orpool/milp/brute_force.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/sampler.hpp"
#include "orpool/validate.hpp"

using namespace orpool;

namespace {

// Counts every admissible (patient, room, day) triple.
int assignable_slots(const Instance& inst) {
  int n = 0;
  for (const Patient& p : inst.patients)
    n += static_cast<int>(p.eligible_rooms.size()) *
         (inst.last_operable_day(p) - p.earliest_day + 1);
  return n;
}

}  // namespace

TEST_CASE("constraint-count audit") {
  std::mt19937_64 rng(21);
  Instance inst = test::tiny_instance(rng, 3, 2, 5, 8);
  std::vector<Scenario> bundle;
  for (int k = 0; k < 2; ++k) bundle.push_back(test::random_scenario(inst, rng));
  auto em = milp::build_extensive(inst, bundle);

  const int S = 3, R = 2, D = 5, N = 2;
  int mandatory = 0;
  for (const Patient& p : inst.patients) mandatory += inst.mandatory(p);
  auto counts = em.model.row_count_by_tag();
  CHECK(counts["(2)"] == mandatory);
  CHECK(counts["(3)"] == inst.num_patients() - mandatory);
  CHECK(counts["(4)"] == R * D);
  CHECK(counts["(5)"] == assignable_slots(inst));
  CHECK(counts["(6)"] == S);
  CHECK(counts["(7)"] == kDownstreams);
  CHECK(counts["guard"] == R * D);
  CHECK(counts["(14)"] == N * S * kDownstreams * D);
  CHECK(counts["(15)"] == N * kDownstreams * D);
  CHECK(counts["(16)"] == N * R * D);
  CHECK(counts["(17)"] == N * R * D);

  // Column audit: x + x' + y + z + u + N * (q + v + o).
  const int expected_cols = assignable_slots(inst) + (inst.num_patients() - mandatory) +
                            R * D + S * R * D + S * kDownstreams +
                            N * (2 * S * kDownstreams * D + R * D);
  CHECK(em.model.num_vars() == expected_cols);
}

TEST_CASE("solver solution validates and prices consistently") {
  std::mt19937_64 rng(22);
  Instance inst = test::tiny_instance(rng, 2, 2, 4, 6);
  std::vector<Scenario> bundle{test::random_scenario(inst, rng),
                               test::random_scenario(inst, rng)};
  auto em = milp::build_extensive(inst, bundle);
  auto backend = milp::make_backend();
  auto out = milp::solve(inst, em, *backend, {});
  REQUIRE(out.status == milp::SolveStatus::Optimal);
  CHECK(validate(inst, out.solution).empty());

  // Objective equals first-stage cost plus mean closed-form recourse.
  double rec = 0;
  for (const auto& sc : bundle) rec += evaluate(inst, out.solution, sc, 0).recourse_cost;
  rec /= static_cast<double>(bundle.size());
  const double composed = first_stage_cost(inst, out.solution) + rec;
  CHECK(composed == doctest::Approx(out.objective).epsilon(1e-6));
}

TEST_CASE("extensive form equals brute force on tiny instances") {
  std::mt19937_64 rng(23);
  auto backend = milp::make_backend();
  for (int rep = 0; rep < 4; ++rep) {
    Instance inst = test::tiny_instance(rng, 2, 2, 3, 4);
    std::vector<Scenario> bundle;
    for (int k = 0; k < 2; ++k) bundle.push_back(test::random_scenario(inst, rng));
    auto bf = milp::brute_force(inst, bundle);
    REQUIRE(bf.feasible);
    auto em = milp::build_extensive(inst, bundle);
    auto out = milp::solve(inst, em, *backend, {});
    REQUIRE(out.status == milp::SolveStatus::Optimal);
    CHECK(out.objective == doctest::Approx(bf.objective).epsilon(1e-6));
  }
}

TEST_CASE("LP relaxation bounds the MIP from below") {
  std::mt19937_64 rng(24);
  Instance inst = test::tiny_instance(rng, 2, 2, 4, 5);
  std::vector<Scenario> bundle{test::random_scenario(inst, rng)};
  auto em = milp::build_extensive(inst, bundle);
  auto backend = milp::make_backend();
  auto mip = milp::solve(inst, em, *backend, {});
  REQUIRE(mip.status == milp::SolveStatus::Optimal);

  auto relaxed = milp::build_extensive(inst, bundle);
  // Drop integrality by rebuilding the model with relaxed variables.
  milp::MilpModel lp;
  for (const auto& v : relaxed.model.vars())
    lp.add_var(v.lb, v.ub, v.obj, milp::VarType::Continuous);
  for (const auto& r : relaxed.model.rows()) lp.add_row(r.coeffs, r.lo, r.hi, r.tag);
  auto lpres = backend->solve(lp, {});
  REQUIRE(lpres.status == milp::SolveStatus::Optimal);
  CHECK(lpres.objective <= mip.objective + 1e-6 * std::max(1.0, mip.objective));
}

TEST_CASE("mean scenario: averaged durations, re-rounded LOS") {
  std::mt19937_64 rng(25);
  Instance inst = test::tiny_instance(rng, 1, 1, 3, 1);
  Scenario a, b;
  a.durations = {100};
  b.durations = {140};
  a.los_total_raw = {2.0};
  b.los_total_raw = {5.0};
  a.los = {ScenarioSampler::split_los(2.0, 0.4)};
  b.los = {ScenarioSampler::split_los(5.0, 0.4)};
  auto mean = milp::mean_scenario(inst, {a, b});
  CHECK(mean.durations[0] == doctest::Approx(120));
  // Mean raw total 3.5 rounds to 4 days in total.
  CHECK(mean.los[0][kIcu] + mean.los[0][kWard] == 4);
}

TEST_CASE("infeasible model is reported, not mis-solved") {
  std::mt19937_64 rng(26);
  Instance inst = test::tiny_instance(rng, 1, 1, 1, 2);
  // Two mandatory patients whose worst-case durations cannot share the block.
  for (auto& p : inst.patients) {
    p.latest_day = 0;
    p.max_duration = 500;  // pair exceeds 480 + 180
  }
  std::vector<Scenario> bundle{test::random_scenario(inst, rng)};
  auto em = milp::build_extensive(inst, bundle);
  auto backend = milp::make_backend();
  auto res = backend->solve(em.model, {});
  CHECK(res.status == milp::SolveStatus::Infeasible);
}

TEST_CASE("second-stage LP matches the evaluator's composed tables") {
  std::mt19937_64 rng(27);
  Instance inst = test::tiny_instance(rng, 2, 2, 5, 6);
  FirstStageSolution sol;
  for (int tries = 0;; ++tries) {
    sol = test::random_feasible_solution(inst, rng);
    if (validate(inst, sol).empty()) break;
    REQUIRE(tries < 50);
  }
  Scenario sc = test::random_scenario(inst, rng);
  auto lp = milp::build_second_stage_lp(inst, sol, sc);
  auto backend = milp::make_backend();
  auto res = backend->solve(lp, {});
  REQUIRE(res.status == milp::SolveStatus::Optimal);
  auto out = evaluate(inst, sol, sc, 0);
  CHECK(out.recourse_cost == doctest::Approx(res.objective).epsilon(1e-7));
}
