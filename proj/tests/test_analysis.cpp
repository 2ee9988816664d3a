#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "orpool/analysis.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/milp/backend.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/rng.hpp"
#include "orpool/validate.hpp"

using namespace orpool;

namespace {

Instance pooled_instance(std::uint64_t seed, int beds_icu = 4, int beds_ward = 6) {
  std::mt19937_64 rng(seed);
  return test::tiny_instance(rng, 2, 2, 5, 6, 0.5, beds_icu, beds_ward);
}

std::vector<Scenario> bundle_for(const Instance& inst, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<Scenario> b;
  for (int k = 0; k < n; ++k) b.push_back(test::random_scenario(inst, rng));
  return b;
}

}  // namespace

TEST_CASE("policy comparison: closure and identity") {
  Instance inst = pooled_instance(41);
  auto bundle = bundle_for(inst, 5, 3);
  auto cmp = compare_policies(inst, bundle, {{0.0, 0.0}, {0.0, 0.0}, {0.5, 0.5}}, {}, 2);
  REQUIRE(cmp.rows.size() == 3);
  // Identical policy to the baseline: zero improvement.
  CHECK(cmp.rows[1].imp_percent == doctest::Approx(0).epsilon(1e-9));
  for (const auto& row : cmp.rows) {
    const auto& ci = row.component_imp;
    const double sum = ci.waiting + ci.postponement + ci.or_fixed + ci.overtime + ci.surge;
    CHECK(sum == doctest::Approx(row.imp_percent).epsilon(1e-9));
    CHECK(row.objective == doctest::Approx(row.cost.total()).epsilon(1e-12));
  }
}

TEST_CASE("sensitivity: multiplier 1 is a fixed point for every parameter") {
  Instance inst = pooled_instance(42);
  auto bundle = bundle_for(inst, 6, 2);
  std::vector<SensitivityRow> baseline =
      sensitivity_sweep(inst, bundle, SensParam::Waiting, {1.0}, {});
  const std::string base_csv = sensitivity_csv(baseline);
  for (SensParam p : {SensParam::Or, SensParam::Surge, SensParam::Postpone,
                      SensParam::Overtime, SensParam::Duration, SensParam::Los}) {
    auto rows = sensitivity_sweep(inst, bundle, p, {1.0}, {});
    CHECK(sensitivity_csv(rows) == base_csv);
  }
}

TEST_CASE("sensitivity: rejects nonpositive multipliers") {
  Instance inst = pooled_instance(43);
  auto bundle = bundle_for(inst, 7, 1);
  CHECK_THROWS(sensitivity_sweep(inst, bundle, SensParam::Surge, {1.0, 0.0}, {}));
  CHECK_THROWS(sensitivity_sweep(inst, bundle, SensParam::Surge, {-2.0}, {}));
}

TEST_CASE("sensitivity rows carry solution statistics") {
  Instance inst = pooled_instance(44);
  auto bundle = bundle_for(inst, 8, 2);
  auto rows = sensitivity_sweep(inst, bundle, SensParam::Postpone, {0.5, 1.5}, {});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.open_blocks >= 0);
    CHECK(r.open_blocks <= inst.rooms * inst.horizon_days);
    CHECK(r.waiting_days >= 0);
    CHECK(r.postponed >= 0);
    CHECK(r.overtime_minutes >= 0);
    CHECK(r.objective == doctest::Approx(r.cost.total()).epsilon(1e-12));
  }
  // Cheaper postponement never reduces the number of postponed patients.
  CHECK(rows[0].postponed >= rows[1].postponed);
}

TEST_CASE("occupancy series: one scenario reproduces its q/v tables") {
  Instance inst = pooled_instance(45);
  std::mt19937_64 rng(9);
  FirstStageSolution sol;
  for (int tries = 0;; ++tries) {
    sol = test::random_feasible_solution(inst, rng);
    if (validate(inst, sol).empty()) break;
    REQUIRE(tries < 50);
  }
  auto bundle = bundle_for(inst, 10, 1);
  auto pts = occupancy_series(inst, sol, bundle);
  auto out = evaluate(inst, sol, bundle[0], mix64(0));
  const int D = inst.horizon_days;
  REQUIRE(pts.size() == static_cast<size_t>(inst.num_specialties()) * kDownstreams * D);
  for (const auto& p : pts) {
    const size_t k =
        (static_cast<size_t>(p.specialty) * kDownstreams + p.downstream) * D + p.day;
    CHECK(p.mean_q == doctest::Approx(out.shared_used[k]));
    CHECK(p.mean_v == doctest::Approx(out.surge_used[k]));
  }
}

TEST_CASE("occupancy series respects the shared-capacity bound on average") {
  Instance inst = pooled_instance(46, 6, 8);
  std::mt19937_64 rng(12);
  FirstStageSolution sol;
  for (int tries = 0;; ++tries) {
    sol = test::random_feasible_solution(inst, rng);
    if (validate(inst, sol).empty()) break;
    REQUIRE(tries < 50);
  }
  auto bundle = bundle_for(inst, 13, 6);
  auto pts = occupancy_series(inst, sol, bundle);
  const int D = inst.horizon_days;
  for (int h = 0; h < kDownstreams; ++h)
    for (int d = 0; d < D; ++d) {
      double q = 0;
      for (const auto& p : pts)
        if (p.downstream == h && p.day == d) q += p.mean_q;
      CHECK(q <= inst.shared_capacity(h) + 1e-9);
    }
}

TEST_CASE("expected breakdown composes first stage and mean recourse") {
  Instance inst = pooled_instance(47);
  std::mt19937_64 rng(14);
  FirstStageSolution sol;
  for (int tries = 0;; ++tries) {
    sol = test::random_feasible_solution(inst, rng);
    if (validate(inst, sol).empty()) break;
    REQUIRE(tries < 50);
  }
  auto bundle = bundle_for(inst, 15, 4);
  auto cb = expected_breakdown(inst, sol, bundle);
  double rec = 0;
  for (size_t p = 0; p < bundle.size(); ++p)
    rec += evaluate(inst, sol, bundle[p], mix64(p)).recourse_cost;
  rec /= static_cast<double>(bundle.size());
  CHECK(cb.surge + cb.overtime == doctest::Approx(rec).epsilon(1e-9));
}

TEST_CASE("CSV emitters: headers and row counts") {
  Instance inst = pooled_instance(48);
  auto bundle = bundle_for(inst, 16, 2);
  auto cmp = compare_policies(inst, bundle, {{0.0, 0.0}, {1.0, 1.0}}, {});
  auto csv = policy_csv(cmp);
  CHECK(csv.find("alpha_icu,alpha_ward,objective") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

  auto rows = sensitivity_sweep(inst, bundle, SensParam::Surge, {1.0}, {});
  auto scsv = sensitivity_csv(rows);
  CHECK(scsv.find("multiplier,objective") == 0);
  CHECK(std::count(scsv.begin(), scsv.end(), '\n') == 2);
}

TEST_CASE("sens_param_from_string round trips") {
  for (auto name : {"waiting", "or", "surge", "postpone", "overtime", "duration", "los"})
    CHECK(to_string(sens_param_from_string(name)) == name);
  CHECK_THROWS(sens_param_from_string("bogus"));
}
