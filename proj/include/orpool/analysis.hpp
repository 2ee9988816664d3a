#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orpool/milp/backend.hpp"
#include "orpool/types.hpp"

namespace orpool {

// One pooling policy (a shared-fraction setting) evaluated on a common
// scenario bundle. Improvement is relative to the first row (no sharing by
// convention); the five component columns sum to imp_percent exactly.
struct PolicyRow {
  PerDownstream<double> shared_fraction{};
  double objective = 0;
  CostBreakdown cost;  // expected breakdown on the bundle
  double imp_percent = 0;
  CostBreakdown component_imp;  // per-component contribution, same scale
};

struct PolicyComparison {
  std::vector<PolicyRow> rows;
};

PolicyComparison compare_policies(const Instance& inst, const std::vector<Scenario>& bundle,
                                  const std::vector<PerDownstream<double>>& policies,
                                  const milp::SolverLimits& limits = {}, int jobs = 1);

enum class SensParam { Waiting, Or, Surge, Postpone, Overtime, Duration, Los };

SensParam sens_param_from_string(const std::string& name);
std::string to_string(SensParam p);

struct SensitivityRow {
  double multiplier = 1;
  double objective = 0;
  CostBreakdown cost;        // expected breakdown on the (scaled) bundle
  double waiting_days = 0;   // total scheduled days past earliest
  int postponed = 0;
  int open_blocks = 0;       // open room-days
  double overtime_minutes = 0;  // mean total per scenario
};

std::vector<SensitivityRow> sensitivity_sweep(const Instance& inst,
                                              const std::vector<Scenario>& bundle,
                                              SensParam param,
                                              const std::vector<double>& multipliers,
                                              const milp::SolverLimits& limits = {},
                                              int jobs = 1);

// Mean shared-bed and surge usage per (downstream, specialty, day) over the
// bundle, for occupancy time-series plots.
struct SeriesPoint {
  int day = 0, downstream = 0, specialty = 0;
  double mean_q = 0, mean_v = 0;
};

std::vector<SeriesPoint> occupancy_series(const Instance& inst, const FirstStageSolution& sol,
                                          const std::vector<Scenario>& bundle);

// Expected cost breakdown of a fixed first stage over a bundle (first-stage
// components plus mean surge/overtime), evaluated in closed form.
CostBreakdown expected_breakdown(const Instance& inst, const FirstStageSolution& sol,
                                 const std::vector<Scenario>& bundle);

std::string policy_csv(const PolicyComparison& cmp);
std::string sensitivity_csv(const std::vector<SensitivityRow>& rows);
std::string series_csv(const std::vector<SeriesPoint>& pts);

}  // namespace orpool
