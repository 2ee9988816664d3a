#pragma once

#include <stdexcept>
#include <vector>

#include "orpool/types.hpp"

namespace orpool::milp {

struct SpaceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BruteForceResult {
  FirstStageSolution solution;
  double objective = 0;
  bool feasible = false;
};

// Exhaustive enumeration over (assignment, bed split) pairs, with the bed
// split optimized separably per downstream for each assignment. Enforces the
// same worst-case workload guard as the extensive form so both search the
// same feasible set. Throws SpaceTooLarge past `max_space` assignment
// combinations.
BruteForceResult brute_force(const Instance& inst, const std::vector<Scenario>& scenarios,
                             double max_space = 1e7);

}  // namespace orpool::milp
