#pragma once

#include <cstdint>
#include <vector>

#include "orpool/types.hpp"

namespace orpool {

// Reference specialty rows (surgical time and LOS statistics).
const std::vector<SpecialtyProfile>& reference_specialties();

struct BedRule {
  enum class Kind { Formula08, Preset } kind = Kind::Formula08;
  int preset_icu = 35;
  int preset_ward = 65;
};

struct GeneratorConfig {
  int weeks = 2;              // in {2,3,4}
  int n_specialties = 4;      // 1..7
  std::uint64_t seed = 0;
  BedRule bed_rule;
  int patients_per_week = 60;
  PerDownstream<double> shared_fraction{0.5, 0.5};
  double icu_share = 0.4;     // LOS split used for the expected-demand bed rule
};

Instance generate(const GeneratorConfig& cfg);

// All (weeks, specialty-count) combinations x replications, deterministically
// seeded from base_seed. 21 combinations by default.
std::vector<Instance> generate_grid(std::uint64_t base_seed, int replications);

// Seed assigned to one grid cell; injective over (weeks, n_spec, rep).
std::uint64_t grid_seed(std::uint64_t base_seed, int weeks, int n_spec, int rep);

}  // namespace orpool
