#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "orpool/generator.hpp"
#include "orpool/rng.hpp"
#include "orpool/sampler.hpp"

using namespace orpool;

namespace {

Instance sampled_instance(std::uint64_t seed = 1) {
  GeneratorConfig cfg;
  cfg.weeks = 2;
  cfg.n_specialties = 3;
  cfg.patients_per_week = 10;
  cfg.seed = seed;
  return generate(cfg);
}

}  // namespace

TEST_CASE("durations stay inside the truncation window") {
  Instance inst = sampled_instance();
  SamplerConfig cfg;
  cfg.seed = 5;
  ScenarioSampler sampler(inst, cfg);
  auto bundle = sampler.sample_bundle(50);
  for (const auto& sc : bundle)
    for (int i = 0; i < inst.num_patients(); ++i) {
      const Patient& p = inst.patients[i];
      const double sigma = p.mean_duration / 6.0;
      CHECK(sc.durations[i] >= p.mean_duration - 3 * sigma - 1e-9);
      CHECK(sc.durations[i] <= p.max_duration + 1e-9);
      // mu/6 sigma with 3-sigma truncation implies [0.5 mu, 1.5 mu].
      CHECK(sc.durations[i] >= 0.5 * p.mean_duration - 1e-9);
      CHECK(sc.durations[i] <= 1.5 * p.mean_duration + 1e-9);
    }
}

TEST_CASE("duration moments match the profile") {
  Instance inst = sampled_instance();
  // One synthetic patient with known moments, many draws.
  Instance one = inst;
  one.patients.resize(1);
  one.patients[0].mean_duration = 150.95;
  one.patients[0].max_duration = 1.5 * 150.95;
  SamplerConfig cfg;
  cfg.seed = 11;
  ScenarioSampler sampler(one, cfg);
  const int n = 20000;
  double sum = 0, sum2 = 0;
  auto bundle = sampler.sample_bundle(n);
  for (const auto& sc : bundle) {
    sum += sc.durations[0];
    sum2 += sc.durations[0] * sc.durations[0];
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(mean == doctest::Approx(150.95).epsilon(0.02));
  CHECK(sd == doctest::Approx(150.95 / 6.0).epsilon(0.05));
}

TEST_CASE("LOS split: rounded total, 40% ICU share") {
  auto split = ScenarioSampler::split_los(5.2, 0.4);
  CHECK(split[kIcu] + split[kWard] == 5);
  CHECK(split[kIcu] == 2);  // round(0.4 * 5)
  CHECK(split[kWard] == 3);

  auto zero = ScenarioSampler::split_los(-1.7, 0.4);  // negative draws clamp to zero
  CHECK(zero[kIcu] == 0);
  CHECK(zero[kWard] == 0);

  auto one = ScenarioSampler::split_los(1.4, 0.4);
  CHECK(one[kIcu] + one[kWard] == 1);
}

TEST_CASE("same seed, same bundle; different seed, different bundle") {
  Instance inst = sampled_instance();
  SamplerConfig a;
  a.seed = 42;
  auto b1 = ScenarioSampler(inst, a).sample_bundle(5);
  auto b2 = ScenarioSampler(inst, a).sample_bundle(5);
  REQUIRE(b1.size() == b2.size());
  for (size_t k = 0; k < b1.size(); ++k) {
    CHECK(b1[k].durations == b2[k].durations);
    CHECK(b1[k].los == b2[k].los);
  }
  SamplerConfig c;
  c.seed = 43;
  auto b3 = ScenarioSampler(inst, c).sample_bundle(5);
  bool differs = false;
  for (size_t k = 0; k < b1.size(); ++k) differs |= (b1[k].durations != b3[k].durations);
  CHECK(differs);
}

TEST_CASE("seed derivation separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("scaling by 1 is the identity") {
  Instance inst = sampled_instance();
  SamplerConfig cfg;
  cfg.seed = 2;
  auto sc = ScenarioSampler(inst, cfg).sample_bundle(1)[0];
  auto d1 = scale_durations(sc, 1.0);
  CHECK(d1.durations == sc.durations);
  CHECK(d1.los == sc.los);
  auto l1 = scale_los(sc, 1.0);
  CHECK(l1.durations == sc.durations);
  CHECK(l1.los == sc.los);
  CHECK(l1.los_total_raw == sc.los_total_raw);
}

TEST_CASE("LOS scaling re-rounds from the raw draw") {
  Scenario sc;
  sc.durations = {100};
  sc.los_total_raw = {2.6};
  sc.los = {ScenarioSampler::split_los(2.6, 0.4)};
  auto doubled = scale_los(sc, 2.0);
  CHECK(doubled.los_total_raw[0] == doctest::Approx(5.2));
  CHECK(doubled.los[0][kIcu] + doubled.los[0][kWard] == 5);
  CHECK(doubled.durations == sc.durations);
}

TEST_CASE("duration scaling leaves LOS untouched") {
  Scenario sc;
  sc.durations = {100, 80};
  sc.los_total_raw = {2.6, 1.0};
  sc.los = {{1, 2}, {0, 1}};
  auto scaled = scale_durations(sc, 1.5);
  CHECK(scaled.durations[0] == doctest::Approx(150));
  CHECK(scaled.durations[1] == doctest::Approx(120));
  CHECK(scaled.los == sc.los);
}
