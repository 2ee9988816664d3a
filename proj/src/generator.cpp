#include "orpool/generator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "orpool/rng.hpp"

namespace orpool {

const std::vector<SpecialtyProfile>& reference_specialties() {
  static const std::vector<SpecialtyProfile> rows = {
      {0, "general", 150.95, 25.16, 3.10, 4.65, 4.48},
      {1, "neurology", 135.06, 22.51, 2.89, 4.34, 5.19},
      {2, "cardiovascular", 189.34, 31.56, 2.34, 3.50, 3.01},
      {3, "orthopedic", 151.95, 25.33, 3.08, 4.61, 4.51},
      {4, "urology", 94.00, 5.22, 6.27, 9.402, 3.68},
      {5, "plastic", 157.72, 10.52, 15.77, 6.71, 4.54},
      {6, "obstetrics", 79.32, 5.29, 7.93, 5.22, 2.21},
  };
  return rows;
}

Instance generate(const GeneratorConfig& cfg) {
  if (cfg.weeks < 2 || cfg.weeks > 4) throw std::invalid_argument("weeks must be in {2,3,4}");
  if (cfg.n_specialties < 1 || cfg.n_specialties > 7)
    throw std::invalid_argument("n_specialties must be in 1..7");
  if (cfg.patients_per_week < 1) throw std::invalid_argument("patients_per_week must be >= 1");

  Instance inst;
  inst.horizon_days = cfg.weeks * 7;
  inst.rooms = 4;
  inst.regular_time = 480;
  inst.max_overtime = 180;
  inst.shared_fraction = cfg.shared_fraction;
  inst.or_open_cost = 4437.0;
  inst.overtime_cost_rate = 12.37;
  inst.surge_cost[kIcu] = 109.58;
  inst.surge_cost[kWard] = 62.94;

  inst.specialties.assign(reference_specialties().begin(),
                          reference_specialties().begin() + cfg.n_specialties);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> u_day(0, inst.horizon_days - 1);
  std::uniform_int_distribution<int> u_window(1, 7);
  std::uniform_int_distribution<int> u_spec(0, cfg.n_specialties - 1);
  std::uniform_int_distribution<int> u_priority(1, 5);
  std::uniform_real_distribution<double> u_los_scale(0.75, 1.25);

  std::vector<int> all_rooms(inst.rooms);
  for (int r = 0; r < inst.rooms; ++r) all_rooms[r] = r;

  const int n_patients = cfg.weeks * cfg.patients_per_week;
  inst.patients.reserve(n_patients);
  for (int i = 0; i < n_patients; ++i) {
    Patient p;
    p.id = i;
    p.earliest_day = u_day(rng);
    p.latest_day = p.earliest_day + u_window(rng) - 1;
    p.specialty = u_spec(rng);
    const SpecialtyProfile& sp = inst.specialties[p.specialty];
    p.mean_duration = sp.mean_duration;
    p.max_duration = 1.5 * sp.mean_duration;  // the 3-sigma truncation ceiling
    p.mean_los_total = u_los_scale(rng) * sp.mean_los_total();
    p.sd_los = sp.sd_los;
    p.priority = u_priority(rng);
    p.waiting_cost_rate = p.priority * 1000.0;
    p.postpone_cost = p.priority * 15000.0;
    p.eligible_rooms = all_rooms;
    inst.patients.push_back(std::move(p));
  }

  if (cfg.bed_rule.kind == BedRule::Kind::Preset) {
    inst.bed_stock[kIcu] = cfg.bed_rule.preset_icu;
    inst.bed_stock[kWard] = cfg.bed_rule.preset_ward;
  } else {
    // 0.8 x expected steady-state demand per downstream.
    PerDownstream<double> demand{0, 0};
    for (const Patient& p : inst.patients) {
      demand[kIcu] += cfg.icu_share * p.mean_los_total;
      demand[kWard] += (1.0 - cfg.icu_share) * p.mean_los_total;
    }
    for (int h = 0; h < kDownstreams; ++h)
      inst.bed_stock[h] =
          static_cast<int>(std::lround(0.8 * demand[h] / inst.horizon_days));
  }

  // Non-binding defaults: the experiments never restrict block counts.
  inst.block_bounds.assign(cfg.n_specialties, {0, inst.rooms * inst.horizon_days});
  return inst;
}

std::uint64_t grid_seed(std::uint64_t base_seed, int weeks, int n_spec, int rep) {
  std::uint64_t cell = static_cast<std::uint64_t>(weeks) * 1000003ULL +
                       static_cast<std::uint64_t>(n_spec) * 1009ULL +
                       static_cast<std::uint64_t>(rep);
  return derive_seed(base_seed, cell);
}

std::vector<Instance> generate_grid(std::uint64_t base_seed, int replications) {
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  std::vector<Instance> out;
  out.reserve(21 * replications);
  for (int weeks = 2; weeks <= 4; ++weeks)
    for (int n_spec = 1; n_spec <= 7; ++n_spec)
      for (int rep = 0; rep < replications; ++rep) {
        GeneratorConfig cfg;
        cfg.weeks = weeks;
        cfg.n_specialties = n_spec;
        cfg.seed = grid_seed(base_seed, weeks, n_spec, rep);
        out.push_back(generate(cfg));
      }
  return out;
}

}  // namespace orpool
