#include "orpool/evaluator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace orpool {

OccupancyTable occupancy(const Instance& inst, const FirstStageSolution& sol,
                         const Scenario& scenario) {
  const int S = inst.num_specialties();
  const int D = inst.horizon_days;
  OccupancyTable occ;
  occ.specialties = S;
  occ.days = D;
  occ.count.assign(static_cast<size_t>(S) * kDownstreams * D, 0);

  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) occ.at(s, h, d) += scenario.carryover_at(s, h, d, D);

  for (int i = 0; i < inst.num_patients(); ++i) {
    const auto& slot = sol.assignment[i];
    if (!slot) continue;
    const int s = inst.patients[i].specialty;
    int start = slot->day;  // occupies the first downstream from surgery day on
    for (int h = 0; h < kDownstreams; ++h) {
      int end = start + scenario.los[i][h];  // exclusive
      for (int d = start; d < end && d < D; ++d) occ.at(s, h, d) += 1;
      start = end;
    }
  }
  return occ;
}

SharedAllocation allocate_shared(const Instance& inst, const OccupancyTable& occ,
                                 const std::vector<PerDownstream<int>>& bed_split,
                                 const std::vector<int>& order) {
  const int D = occ.days;
  SharedAllocation a;
  a.shared_used.assign(occ.count.size(), 0);
  a.surge_used.assign(occ.count.size(), 0);
  auto idx = [D](int s, int h, int d) {
    return (static_cast<size_t>(s) * kDownstreams + h) * D + d;
  };
  for (int h = 0; h < kDownstreams; ++h) {
    const int cap = inst.shared_capacity(h);
    for (int d = 0; d < D; ++d) {
      int remaining = cap;
      for (int s : order) {
        int overflow = std::max(occ.at(s, h, d) - bed_split[s][h], 0);
        int q = remaining > 0 ? std::min(overflow, remaining) : 0;
        a.shared_used[idx(s, h, d)] = q;
        a.surge_used[idx(s, h, d)] = overflow - q;
        remaining -= q;
      }
    }
  }
  return a;
}

std::vector<double> overtime(const Instance& inst, const FirstStageSolution& sol,
                             const Scenario& scenario) {
  const int D = inst.horizon_days;
  std::vector<double> load(static_cast<size_t>(inst.rooms) * D, 0.0);
  for (int i = 0; i < inst.num_patients(); ++i) {
    const auto& slot = sol.assignment[i];
    if (slot) load[static_cast<size_t>(slot->room) * D + slot->day] += scenario.durations[i];
  }
  for (double& minutes : load) {
    if (minutes > inst.regular_time + inst.max_overtime + 1e-9)
      throw OvertimeOverflow("room-day workload " + std::to_string(minutes) +
                             " exceeds regular time + overtime cap");
    minutes = std::max(minutes - inst.regular_time, 0.0);
  }
  return load;
}

SecondStageOutcome evaluate_with_order(const Instance& inst, const FirstStageSolution& sol,
                                       const Scenario& scenario,
                                       const std::vector<int>& order) {
  OccupancyTable occ = occupancy(inst, sol, scenario);
  SharedAllocation alloc = allocate_shared(inst, occ, sol.bed_split, order);
  SecondStageOutcome out;
  out.shared_used = std::move(alloc.shared_used);
  out.surge_used = std::move(alloc.surge_used);
  out.overtime = overtime(inst, sol, scenario);

  const int S = inst.num_specialties();
  const int D = inst.horizon_days;
  double surge = 0;
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d)
        surge += inst.surge_cost[h] *
                 out.surge_used[(static_cast<size_t>(s) * kDownstreams + h) * D + d];
  double ot = std::accumulate(out.overtime.begin(), out.overtime.end(), 0.0);
  out.recourse_cost = surge + inst.overtime_cost_rate * ot;
  return out;
}

SecondStageOutcome evaluate(const Instance& inst, const FirstStageSolution& sol,
                            const Scenario& scenario, std::uint64_t order_seed) {
  std::vector<int> order(inst.num_specialties());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(order_seed);
  std::shuffle(order.begin(), order.end(), rng);
  return evaluate_with_order(inst, sol, scenario, order);
}

}  // namespace orpool
