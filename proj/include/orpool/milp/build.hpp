#pragma once

#include <vector>

#include "orpool/milp/backend.hpp"
#include "orpool/milp/model.hpp"
#include "orpool/types.hpp"

namespace orpool::milp {

// Extensive form: first stage plus one second-stage copy per scenario, with
// the expected recourse replaced by the sample average over the copies.
// Carries the column index maps needed to read a solution back out.
struct ExtensiveModel {
  MilpModel model;
  int n_scenarios = 0;

  // First-stage columns. x is sparse: one entry per admissible (i, r, d).
  struct AssignVar {
    int patient, room, day, col;
  };
  std::vector<AssignVar> x;
  std::vector<int> xprime;                    // per patient; -1 for mandatory
  std::vector<std::vector<int>> y;            // [room][day]
  std::vector<std::vector<std::vector<int>>> z;  // [spec][room][day]
  std::vector<std::array<int, kDownstreams>> u;  // [spec][h]

  // Second-stage columns for scenario n.
  int q_col(int n, int s, int h, int d) const;
  int v_col(int n, int s, int h, int d) const;
  int o_col(int n, int r, int d) const;

  int stage2_offset = 0;  // first q column of scenario 0
  int spec_count = 0, room_count = 0, day_count = 0;
};

ExtensiveModel build_extensive(const Instance& inst, const std::vector<Scenario>& scenarios);

// Deterministic counterpart: single scenario at the per-patient means of the
// provided scenarios (LOS re-rounded to whole days).
ExtensiveModel build_evp(const Instance& inst, const std::vector<Scenario>& scenarios);
Scenario mean_scenario(const Instance& inst, const std::vector<Scenario>& scenarios);

// Second-stage LP for a fixed first stage; continuous q, v, o only. Used as
// the independent optimality oracle for the closed-form evaluator.
MilpModel build_second_stage_lp(const Instance& inst, const FirstStageSolution& sol,
                                const Scenario& scenario);

FirstStageSolution extract_solution(const Instance& inst, const ExtensiveModel& em,
                                    const std::vector<double>& values);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  FirstStageSolution solution;
  double objective = 0;
  double bound = 0;
};

// Solves the model and reads back a validated first-stage solution.
SolveOutcome solve(const Instance& inst, const ExtensiveModel& em, SolverBackend& backend,
                   const SolverLimits& limits = {});

}  // namespace orpool::milp
