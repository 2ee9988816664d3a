#pragma once

// Hand-rolled random fixtures small enough for brute force and LP oracles.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "orpool/types.hpp"

namespace orpool::test {

// Random instance with wide patient windows so greedy placement always
// succeeds. Costs use the reference magnitudes so objective trade-offs stay
// realistic.
inline Instance tiny_instance(std::mt19937_64& rng, int S, int R, int D, int n_pat,
                              double alpha = 0.5, int bed_icu = 4, int bed_ward = 6) {
  Instance inst;
  inst.horizon_days = D;
  inst.rooms = R;
  inst.regular_time = 480;
  inst.max_overtime = 180;
  inst.or_open_cost = 4437;
  inst.overtime_cost_rate = 12.37;
  inst.surge_cost = {109.58, 62.94};
  inst.bed_stock = {bed_icu, bed_ward};
  inst.shared_fraction = {alpha, alpha};

  std::uniform_real_distribution<double> dur(60, 150);
  std::uniform_int_distribution<int> spec(0, S - 1);
  std::uniform_int_distribution<int> prio(1, 5);
  std::uniform_int_distribution<int> late(0, 2 * D);
  std::uniform_real_distribution<double> los(0.5, 4.0);

  for (int s = 0; s < S; ++s) {
    SpecialtyProfile p;
    p.id = s;
    p.name = "spec" + std::to_string(s);
    p.mean_duration = 100;
    p.sd_duration = 100.0 / 6;
    p.mean_los_icu = 1;
    p.mean_los_ward = 2;
    p.sd_los = 0.5;
    inst.specialties.push_back(p);
    inst.block_bounds.push_back({0, R * D});
  }
  for (int i = 0; i < n_pat; ++i) {
    Patient p;
    p.id = i;
    p.specialty = spec(rng);
    p.earliest_day = 0;
    p.latest_day = late(rng);  // beyond D-1 means optional
    p.priority = prio(rng);
    p.mean_duration = dur(rng);
    p.max_duration = 1.5 * p.mean_duration;
    p.mean_los_total = los(rng);
    p.sd_los = p.mean_los_total / 6;
    p.waiting_cost_rate = 1000.0 * p.priority;
    p.postpone_cost = 15000.0 * p.priority;
    p.eligible_rooms.resize(R);
    std::iota(p.eligible_rooms.begin(), p.eligible_rooms.end(), 0);
    inst.patients.push_back(p);
  }
  return inst;
}

inline Scenario random_scenario(const Instance& inst, std::mt19937_64& rng) {
  Scenario sc;
  for (const Patient& p : inst.patients) {
    std::uniform_real_distribution<double> dur(0.5 * p.mean_duration, p.max_duration);
    sc.durations.push_back(dur(rng));
    std::uniform_real_distribution<double> los(0, 2 * p.mean_los_total);
    double raw = los(rng);
    sc.los_total_raw.push_back(raw);
    int total = static_cast<int>(std::lround(raw));
    int icu = static_cast<int>(std::lround(0.4 * total));
    sc.los.push_back({icu, total - icu});
  }
  return sc;
}

// Greedy feasible first stage: random placement honoring the block-specialty
// rule and the worst-case workload guard; optional patients may be postponed.
inline FirstStageSolution random_feasible_solution(const Instance& inst,
                                                   std::mt19937_64& rng) {
  const int R = inst.rooms, D = inst.horizon_days;
  FirstStageSolution sol;
  sol.assignment.resize(inst.num_patients());
  sol.block_specialty.assign(R, std::vector<int>(D, -1));
  std::vector<double> load(static_cast<size_t>(R) * D, 0.0);

  std::vector<int> order(inst.num_patients());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution postpone(0.25);

  for (int i : order) {
    const Patient& p = inst.patients[i];
    const bool mandatory = inst.mandatory(p);
    if (!mandatory && postpone(rng)) continue;
    std::vector<Slot> slots;
    for (int d = p.earliest_day; d <= inst.last_operable_day(p); ++d)
      for (int r : p.eligible_rooms) {
        int spec = sol.block_specialty[r][d];
        if (spec != -1 && spec != p.specialty) continue;
        if (load[static_cast<size_t>(r) * D + d] + p.max_duration >
            inst.regular_time + inst.max_overtime)
          continue;
        slots.push_back({r, d});
      }
    if (slots.empty()) continue;  // optional stays postponed; mandatory handled below
    Slot s = slots[std::uniform_int_distribution<size_t>(0, slots.size() - 1)(rng)];
    sol.assignment[i] = s;
    sol.block_specialty[s.room][s.day] = p.specialty;
    load[static_cast<size_t>(s.room) * D + s.day] += p.max_duration;
  }

  // Random bed split within the per-downstream budget.
  sol.bed_split.assign(inst.num_specialties(), {0, 0});
  for (int h = 0; h < kDownstreams; ++h) {
    int budget = inst.nonshared_capacity(h);
    for (int s = 0; s < inst.num_specialties() && budget > 0; ++s) {
      int take = std::uniform_int_distribution<int>(0, budget)(rng);
      sol.bed_split[s][h] = take;
      budget -= take;
    }
  }
  return sol;
}

}  // namespace orpool::test
