#include <doctest.h>

#include <cmath>
#include <set>

#include "orpool/generator.hpp"
#include "orpool/validate.hpp"

using namespace orpool;

TEST_CASE("reference specialty table") {
  const auto& specs = reference_specialties();
  REQUIRE(specs.size() == 7);
  CHECK(specs[0].name == "general");
  CHECK(specs[0].mean_duration == doctest::Approx(150.95));
  CHECK(specs[0].sd_duration == doctest::Approx(25.16));
  CHECK(specs[0].mean_los_ward == doctest::Approx(3.10));
  CHECK(specs[0].mean_los_icu == doctest::Approx(4.65));
  CHECK(specs[0].sd_los == doctest::Approx(4.48));
  CHECK(specs[2].mean_duration == doctest::Approx(189.34));  // cardiovascular
  CHECK(specs[6].mean_duration == doctest::Approx(79.32));   // obstetrics
}

TEST_CASE("generated instance carries the reference cost rates") {
  GeneratorConfig cfg;
  cfg.weeks = 2;
  cfg.n_specialties = 4;
  cfg.seed = 9;
  Instance inst = generate(cfg);
  CHECK(inst.or_open_cost == doctest::Approx(4437));
  CHECK(inst.overtime_cost_rate == doctest::Approx(12.37));
  CHECK(inst.surge_cost[kIcu] == doctest::Approx(109.58));
  CHECK(inst.surge_cost[kWard] == doctest::Approx(62.94));
  CHECK(inst.regular_time == doctest::Approx(480));
  CHECK(inst.max_overtime == doctest::Approx(180));
  CHECK(inst.rooms == 4);
  CHECK(inst.horizon_days == 14);
  CHECK(inst.num_patients() == 2 * 60);
  for (const Patient& p : inst.patients) {
    CHECK(p.waiting_cost_rate == doctest::Approx(1000.0 * p.priority));
    CHECK(p.postpone_cost == doctest::Approx(15000.0 * p.priority));
    CHECK(p.priority >= 1);
    CHECK(p.priority <= 5);
    CHECK(p.max_duration == doctest::Approx(1.5 * p.mean_duration));
    CHECK(p.earliest_day >= 0);
    CHECK(p.earliest_day <= inst.last_operable_day(p));
    CHECK(!p.eligible_rooms.empty());
  }
}

TEST_CASE("bed rules: expected-demand formula and preset") {
  GeneratorConfig cfg;
  cfg.weeks = 2;
  cfg.n_specialties = 3;
  cfg.seed = 4;
  Instance inst = generate(cfg);
  // Formula oracle: M_h = round(0.8 * sum_i mu_i^{LOS,h} / |D|).
  PerDownstream<double> demand{0, 0};
  for (const Patient& p : inst.patients) {
    demand[kIcu] += 0.4 * p.mean_los_total;
    demand[kWard] += 0.6 * p.mean_los_total;
  }
  for (int h = 0; h < kDownstreams; ++h) {
    int expect = static_cast<int>(std::lround(0.8 * demand[h] / inst.horizon_days));
    CHECK(inst.bed_stock[h] == expect);
  }

  cfg.bed_rule.kind = BedRule::Kind::Preset;
  Instance preset = generate(cfg);
  CHECK(preset.bed_stock[kIcu] == 35);
  CHECK(preset.bed_stock[kWard] == 65);
}

TEST_CASE("generation is deterministic in the seed") {
  GeneratorConfig cfg;
  cfg.weeks = 3;
  cfg.n_specialties = 5;
  cfg.seed = 77;
  Instance a = generate(cfg);
  Instance b = generate(cfg);
  REQUIRE(a.num_patients() == b.num_patients());
  for (int i = 0; i < a.num_patients(); ++i) {
    CHECK(a.patients[i].specialty == b.patients[i].specialty);
    CHECK(a.patients[i].mean_duration == b.patients[i].mean_duration);
    CHECK(a.patients[i].earliest_day == b.patients[i].earliest_day);
    CHECK(a.patients[i].latest_day == b.patients[i].latest_day);
  }
  cfg.seed = 78;
  Instance c = generate(cfg);
  bool differs = false;
  for (int i = 0; i < std::min(a.num_patients(), c.num_patients()); ++i)
    differs |= (a.patients[i].mean_duration != c.patients[i].mean_duration);
  CHECK(differs);
}

TEST_CASE("benchmark grid: 21 cells x replications, injective seeds") {
  auto grid = generate_grid(123, 2);
  CHECK(grid.size() == 42);
  std::set<std::uint64_t> seeds;
  for (int w = 2; w <= 4; ++w)
    for (int s = 1; s <= 7; ++s)
      for (int rep = 0; rep < 5; ++rep) seeds.insert(grid_seed(123, w, s, rep));
  CHECK(seeds.size() == 21u * 5u);
}

TEST_CASE("week/specialty counts shape the instance") {
  for (int w = 2; w <= 4; ++w) {
    GeneratorConfig cfg;
    cfg.weeks = w;
    cfg.n_specialties = 2;
    cfg.seed = 1;
    cfg.patients_per_week = 8;
    Instance inst = generate(cfg);
    CHECK(inst.horizon_days == 7 * w);
    CHECK(inst.num_patients() == 8 * w);
    CHECK(inst.num_specialties() == 2);
    for (const Patient& p : inst.patients) CHECK(p.specialty < 2);
  }
  CHECK_THROWS(generate(GeneratorConfig{.weeks = 5}));
}
