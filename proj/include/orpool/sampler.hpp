#pragma once

#include <cstdint>
#include <random>

#include "orpool/types.hpp"

namespace orpool {

struct SamplerConfig {
  std::uint64_t seed = 0;
  double truncation_sigmas = 3.0;
  double icu_share = 0.4;  // fraction of the total LOS spent in ICU
  // Carry-over occupancy from the previous horizon. 0 disables it; a value
  // in (0,1] seeds day 0 with that fraction of each specialty's even bed
  // share, decaying geometrically over the following days.
  double carryover_fraction = 0.0;
};

class ScenarioSampler {
 public:
  ScenarioSampler(const Instance& inst, SamplerConfig cfg);

  // Truncated-normal surgical duration in minutes, within
  // [mu - k*sigma, mu + k*sigma] with sigma = mu/6.
  double sample_duration(const Patient& p);

  // Total LOS draw split into whole days per downstream; icu + ward equals
  // the rounded total exactly.
  PerDownstream<int> sample_los(const Patient& p, double* total_raw = nullptr);

  Scenario sample_scenario();
  std::vector<Scenario> sample_bundle(int count);

  static PerDownstream<int> split_los(double raw_total, double icu_share);

 private:
  const Instance& inst_;
  SamplerConfig cfg_;
  std::mt19937_64 rng_;
};

// Second-stage parameter scaling used by the sensitivity experiments.
// Duration scaling multiplies realized durations; LOS scaling is applied to
// the raw total stay before re-rounding and splitting.
Scenario scale_durations(const Scenario& sc, double factor);
Scenario scale_los(const Scenario& sc, double factor, double icu_share = 0.4);

}  // namespace orpool
