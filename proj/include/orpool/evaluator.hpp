#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "orpool/types.hpp"

namespace orpool {

// Raised when a room-day's realized workload exceeds regular time plus the
// overtime cap; indicates a first-stage solution built without the
// max-duration guard rows.
struct OvertimeOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Patients present per (specialty, downstream, day), carry-over included.
// Flattened (s * H + h) * D + d.
struct OccupancyTable {
  int specialties = 0;
  int days = 0;
  std::vector<int> count;

  int& at(int s, int h, int d) {
    return count[(static_cast<size_t>(s) * kDownstreams + h) * days + d];
  }
  int at(int s, int h, int d) const {
    return count[(static_cast<size_t>(s) * kDownstreams + h) * days + d];
  }
};

OccupancyTable occupancy(const Instance& inst, const FirstStageSolution& sol,
                         const Scenario& scenario);

// Greedy shared-bed allocation scanning specialties in `order`; returns the
// q (shared used) and v (surge) tables, flattened like OccupancyTable.
struct SharedAllocation {
  std::vector<int> shared_used;
  std::vector<int> surge_used;
};
SharedAllocation allocate_shared(const Instance& inst, const OccupancyTable& occ,
                                 const std::vector<PerDownstream<int>>& bed_split,
                                 const std::vector<int>& order);

// Realized overtime minutes per (room, day), flattened r * D + d.
std::vector<double> overtime(const Instance& inst, const FirstStageSolution& sol,
                             const Scenario& scenario);

// Optimal recourse for a fixed first stage. `order_seed` fixes the specialty
// permutation; the cost is invariant to it, only the q/v split may differ.
SecondStageOutcome evaluate(const Instance& inst, const FirstStageSolution& sol,
                            const Scenario& scenario, std::uint64_t order_seed = 0);

SecondStageOutcome evaluate_with_order(const Instance& inst, const FirstStageSolution& sol,
                                       const Scenario& scenario, const std::vector<int>& order);

}  // namespace orpool
