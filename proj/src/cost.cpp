#include "orpool/cost.hpp"

#include <stdexcept>
#include <string>

namespace orpool {

CostBreakdown first_stage_breakdown(const Instance& inst, const FirstStageSolution& sol) {
  CostBreakdown cb;
  for (int i = 0; i < inst.num_patients(); ++i) {
    const Patient& p = inst.patients[i];
    const auto& slot = sol.assignment[i];
    if (!slot) {
      if (inst.mandatory(p))
        throw std::invalid_argument("mandatory patient " + std::to_string(p.id) +
                                    " is postponed (assignment constraint)");
      cb.postponement += p.postpone_cost;
      continue;
    }
    if (slot->day < p.earliest_day || slot->day > inst.last_operable_day(p))
      throw std::invalid_argument("patient " + std::to_string(p.id) +
                                  " assigned outside its time window");
    if (!p.eligible_room(slot->room))
      throw std::invalid_argument("patient " + std::to_string(p.id) +
                                  " assigned to an ineligible room");
    cb.waiting += p.waiting_cost_rate * (slot->day - p.earliest_day);
  }
  cb.or_fixed = inst.or_open_cost * sol.open_room_days();
  return cb;
}

double first_stage_cost(const Instance& inst, const FirstStageSolution& sol) {
  return first_stage_breakdown(inst, sol).total();
}

}  // namespace orpool
