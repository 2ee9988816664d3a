#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "orpool/milp/model.hpp"

namespace orpool::milp {

enum class SolveStatus { Optimal, FeasibleWithGap, Infeasible, TimeLimit };

struct BackendUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverLimits {
  double rel_gap = 1e-4;
  double time_limit_s = 3600;
  int threads = 1;  // single-threaded keeps solves reproducible
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // incumbent, empty if none
  double objective = 0;
  double bound = 0;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolveResult solve(const MilpModel& model, const SolverLimits& limits) = 0;
};

// `which` empty resolves via the ORPOOL_SOLVER environment variable, then
// defaults to "highs". Throws BackendUnavailable for unknown names.
std::unique_ptr<SolverBackend> make_backend(const std::string& which = "");

}  // namespace orpool::milp
