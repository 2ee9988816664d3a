#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "orpool/milp/backend.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/sampler.hpp"
#include "orpool/types.hpp"

namespace orpool {

struct SaaConfig {
  int n_lb = 30;   // scenarios per lower-bound solve
  int m_iter = 25; // lower-bound iterations
  int p_ub = 6000; // scenarios for upper-bound evaluation
  std::uint64_t seed = 0;
  milp::SolverLimits limits;
  SamplerConfig sampler;  // seed field is ignored; streams derive from `seed`
  int jobs = 1;
};

struct LowerBoundIteration {
  FirstStageSolution solution;
  double objective = 0;  // f_N^m
  milp::SolveStatus status = milp::SolveStatus::Optimal;
  double seconds = 0;
};

struct UpperBoundEstimate {
  double mean = 0;
  // Variance of the mean recourse estimator; first-stage cost is constant.
  double var_of_mean = 0;
  double first_stage = 0;
};

struct SaaReport {
  double lb_mean = 0;
  std::optional<double> lb_var_of_mean;  // absent for a single iteration
  std::vector<double> lb_objectives;
  std::vector<UpperBoundEstimate> ub_per_candidate;
  int best_candidate = -1;
  double best_ub = 0;
  double ub_var_of_mean = 0;
  double gap_percent = 0;
  std::optional<double> vss_percent;
  CostBreakdown best_cost;          // of the best candidate on the UB bundle
  FirstStageSolution best_solution;
  double lb_seconds = 0;
  double ub_seconds = 0;
};

nlohmann::json to_json(const SaaReport& r);

// Deterministic pairwise-summation mean, independent of worker count.
double pairwise_mean(const std::vector<double>& xs);
// Sample variance of the mean, squared deviations over n(n-1).
double var_of_mean(const std::vector<double>& xs, double mean);

class SaaDriver {
 public:
  SaaDriver(const Instance& inst, SaaConfig cfg);

  // M independent N-scenario solves on disjoint seeded streams.
  std::vector<LowerBoundIteration> run_lower_bounds();

  // Deterministic first-stage cost plus mean recourse over the shared
  // P-scenario bundle, via the closed-form evaluator.
  UpperBoundEstimate evaluate_upper_bound(const FirstStageSolution& sol) const;

  // Full procedure: lower bounds, common-random-number upper bounds, gap.
  SaaReport run();

  // EVP solution evaluated on the same bundle; fills report.vss_percent.
  void compute_vss(SaaReport& report);

  const std::vector<Scenario>& ub_bundle() const { return ub_bundle_; }
  std::vector<Scenario> lb_bundle(int iteration) const;

  // Cost split of a solution on the UB bundle.
  CostBreakdown breakdown_on_bundle(const FirstStageSolution& sol) const;

 private:
  const Instance& inst_;
  SaaConfig cfg_;
  std::vector<Scenario> ub_bundle_;
};

}  // namespace orpool
