#pragma once

#include <string>
#include <vector>

#include "orpool/types.hpp"

namespace orpool {

// One violated first-stage constraint. `tag` is the model row family the
// violation belongs to, using the same tags the MILP builder attaches to
// its rows: "(2)" mandatory assignment, "(3)" optional assignment, "(4)"
// block-specialty link, "(5)" patient-block match, "(6)" block bounds,
// "(7)" non-shared bed budget, plus "domain" for window/room eligibility.
struct Violation {
  std::string tag;
  std::string message;
};

// Empty result iff `sol` is feasible for the first-stage model.
std::vector<Violation> validate(const Instance& inst, const FirstStageSolution& sol);

// Throwing wrapper for call sites that require a feasible solution.
void require_valid(const Instance& inst, const FirstStageSolution& sol);

}  // namespace orpool
