#include "orpool/validate.hpp"

#include <stdexcept>

namespace orpool {

namespace {

std::string pat(int id) { return "patient " + std::to_string(id); }

}  // namespace

std::vector<Violation> validate(const Instance& inst, const FirstStageSolution& sol) {
  std::vector<Violation> out;
  const int R = inst.rooms;
  const int D = inst.horizon_days;
  const int S = inst.num_specialties();

  if (static_cast<int>(sol.assignment.size()) != inst.num_patients()) {
    out.push_back({"shape", "assignment size does not match patient count"});
    return out;
  }
  if (static_cast<int>(sol.block_specialty.size()) != R ||
      (R > 0 && static_cast<int>(sol.block_specialty[0].size()) != D)) {
    out.push_back({"shape", "block_specialty table is not rooms x days"});
    return out;
  }
  if (static_cast<int>(sol.bed_split.size()) != S) {
    out.push_back({"shape", "bed_split size does not match specialty count"});
    return out;
  }

  for (int i = 0; i < inst.num_patients(); ++i) {
    const Patient& p = inst.patients[i];
    const auto& slot = sol.assignment[i];
    if (!slot) {
      if (inst.mandatory(p))
        out.push_back({"(2)", pat(p.id) + " is mandatory but unassigned"});
      continue;
    }
    if (slot->room < 0 || slot->room >= R || slot->day < 0 || slot->day >= D) {
      out.push_back({"domain", pat(p.id) + " assigned outside the horizon/room range"});
      continue;
    }
    if (slot->day < p.earliest_day || slot->day > inst.last_operable_day(p))
      out.push_back({"domain", pat(p.id) + " assigned outside its time window"});
    if (!p.eligible_room(slot->room))
      out.push_back({"domain", pat(p.id) + " assigned to an ineligible room"});
    int block = sol.block_specialty[slot->room][slot->day];
    if (block < 0)
      out.push_back({"(4)", pat(p.id) + " assigned to a closed room-day"});
    else if (block != p.specialty)
      out.push_back({"(5)", pat(p.id) + " assigned to a block of another specialty"});
  }

  std::vector<int> block_count(S, 0);
  for (int r = 0; r < R; ++r)
    for (int d = 0; d < D; ++d) {
      int s = sol.block_specialty[r][d];
      if (s < -1 || s >= S) {
        out.push_back({"(4)", "block (" + std::to_string(r) + "," + std::to_string(d) +
                                  ") has an unknown specialty"});
      } else if (s >= 0) {
        ++block_count[s];
      }
    }
  for (int s = 0; s < S; ++s) {
    auto [lo, hi] = inst.block_bounds[s];
    if (block_count[s] < lo || block_count[s] > hi)
      out.push_back({"(6)", "specialty " + std::to_string(s) + " holds " +
                                std::to_string(block_count[s]) + " blocks, bounds [" +
                                std::to_string(lo) + "," + std::to_string(hi) + "]"});
  }

  for (int h = 0; h < kDownstreams; ++h) {
    int sum = 0;
    for (int s = 0; s < S; ++s) {
      if (sol.bed_split[s][h] < 0)
        out.push_back({"(7)", "negative bed split for specialty " + std::to_string(s)});
      sum += sol.bed_split[s][h];
    }
    if (sum > inst.nonshared_capacity(h))
      out.push_back({"(7)", "non-shared beds in downstream " + std::to_string(h) +
                                " exceed " + std::to_string(inst.nonshared_capacity(h))});
  }
  return out;
}

void require_valid(const Instance& inst, const FirstStageSolution& sol) {
  auto v = validate(inst, sol);
  if (!v.empty())
    throw std::invalid_argument("infeasible first-stage solution: " + v.front().tag + " " +
                                v.front().message);
}

}  // namespace orpool
