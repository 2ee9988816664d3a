#pragma once

#include "orpool/types.hpp"

namespace orpool {

// Deterministic first-stage cost: waiting + postponement + room opening.
// Throws std::invalid_argument naming the violated domain if an assignment
// falls outside the patient's time window or eligible rooms.
double first_stage_cost(const Instance& inst, const FirstStageSolution& sol);

// Same components, itemized (overtime/surge stay zero).
CostBreakdown first_stage_breakdown(const Instance& inst, const FirstStageSolution& sol);

}  // namespace orpool
