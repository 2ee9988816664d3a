#include "orpool/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <future>
#include <semaphore>
#include <sstream>
#include <stdexcept>

#include "orpool/cost.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/rng.hpp"
#include "orpool/sampler.hpp"

namespace orpool {

namespace {

// Splits a scenario's recourse into its surge and overtime money components.
CostBreakdown recourse_breakdown(const Instance& inst, const SecondStageOutcome& out) {
  CostBreakdown b;
  const int D = inst.horizon_days;
  for (int s = 0; s < inst.num_specialties(); ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d)
        b.surge += inst.surge_cost[h] *
                   out.surge_used[(static_cast<size_t>(s) * kDownstreams + h) * D + d];
  for (double o : out.overtime) b.overtime += inst.overtime_cost_rate * o;
  return b;
}

// Runs fn(k) for k in [0, n) with at most `jobs` concurrent calls.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::counting_semaphore<> slots(jobs);
  std::vector<std::future<void>> futures;
  for (int k = 0; k < n; ++k)
    futures.push_back(std::async(std::launch::async, [k, &fn, &slots] {
      slots.acquire();
      try {
        fn(k);
      } catch (...) {
        slots.release();
        throw;
      }
      slots.release();
    }));
  for (auto& f : futures) f.get();
}

milp::SolveOutcome solve_extensive(const Instance& inst, const std::vector<Scenario>& bundle,
                                   const milp::SolverLimits& limits) {
  auto em = milp::build_extensive(inst, bundle);
  auto backend = milp::make_backend();
  auto out = milp::solve(inst, em, *backend, limits);
  if (out.status == milp::SolveStatus::Infeasible)
    throw std::runtime_error("extensive form infeasible");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

CostBreakdown expected_breakdown(const Instance& inst, const FirstStageSolution& sol,
                                 const std::vector<Scenario>& bundle) {
  CostBreakdown b = first_stage_breakdown(inst, sol);
  if (bundle.empty()) return b;
  CostBreakdown rec;
  for (size_t p = 0; p < bundle.size(); ++p)
    rec += recourse_breakdown(inst, evaluate(inst, sol, bundle[p], mix64(p)));
  b.surge = rec.surge / static_cast<double>(bundle.size());
  b.overtime = rec.overtime / static_cast<double>(bundle.size());
  return b;
}

PolicyComparison compare_policies(const Instance& inst, const std::vector<Scenario>& bundle,
                                  const std::vector<PerDownstream<double>>& policies,
                                  const milp::SolverLimits& limits, int jobs) {
  PolicyComparison cmp;
  cmp.rows.resize(policies.size());
  parallel_for(static_cast<int>(policies.size()), jobs, [&](int k) {
    Instance variant = inst;
    variant.shared_fraction = policies[k];
    auto out = solve_extensive(variant, bundle, limits);
    PolicyRow& row = cmp.rows[k];
    row.shared_fraction = policies[k];
    row.cost = expected_breakdown(variant, out.solution, bundle);
    row.objective = row.cost.total();
  });
  if (cmp.rows.empty()) return cmp;
  const CostBreakdown& base = cmp.rows.front().cost;
  const double base_obj = cmp.rows.front().objective;
  for (PolicyRow& row : cmp.rows) {
    row.imp_percent = 100.0 * (base_obj - row.objective) / base_obj;
    row.component_imp.waiting = 100.0 * (base.waiting - row.cost.waiting) / base_obj;
    row.component_imp.postponement =
        100.0 * (base.postponement - row.cost.postponement) / base_obj;
    row.component_imp.or_fixed = 100.0 * (base.or_fixed - row.cost.or_fixed) / base_obj;
    row.component_imp.overtime = 100.0 * (base.overtime - row.cost.overtime) / base_obj;
    row.component_imp.surge = 100.0 * (base.surge - row.cost.surge) / base_obj;
  }
  return cmp;
}

SensParam sens_param_from_string(const std::string& name) {
  if (name == "waiting") return SensParam::Waiting;
  if (name == "or") return SensParam::Or;
  if (name == "surge") return SensParam::Surge;
  if (name == "postpone") return SensParam::Postpone;
  if (name == "overtime") return SensParam::Overtime;
  if (name == "duration") return SensParam::Duration;
  if (name == "los") return SensParam::Los;
  throw std::invalid_argument("unknown sensitivity parameter: " + name);
}

std::string to_string(SensParam p) {
  switch (p) {
    case SensParam::Waiting: return "waiting";
    case SensParam::Or: return "or";
    case SensParam::Surge: return "surge";
    case SensParam::Postpone: return "postpone";
    case SensParam::Overtime: return "overtime";
    case SensParam::Duration: return "duration";
    case SensParam::Los: return "los";
  }
  return "?";
}

namespace {

void scale_problem(Instance& inst, std::vector<Scenario>& bundle, SensParam param, double f) {
  switch (param) {
    case SensParam::Waiting:
      for (auto& p : inst.patients) p.waiting_cost_rate *= f;
      break;
    case SensParam::Or:
      inst.or_open_cost *= f;
      break;
    case SensParam::Surge:
      for (int h = 0; h < kDownstreams; ++h) inst.surge_cost[h] *= f;
      break;
    case SensParam::Postpone:
      for (auto& p : inst.patients) p.postpone_cost *= f;
      break;
    case SensParam::Overtime:
      inst.overtime_cost_rate *= f;
      break;
    case SensParam::Duration:
      // Realized times and the per-patient bound move together so the guard
      // constraint keeps the same slack.
      for (auto& p : inst.patients) p.max_duration *= f;
      for (auto& sc : bundle) sc = scale_durations(sc, f);
      break;
    case SensParam::Los:
      for (auto& sc : bundle) sc = scale_los(sc, f);
      break;
  }
}

}  // namespace

std::vector<SensitivityRow> sensitivity_sweep(const Instance& inst,
                                              const std::vector<Scenario>& bundle,
                                              SensParam param,
                                              const std::vector<double>& multipliers,
                                              const milp::SolverLimits& limits, int jobs) {
  for (double f : multipliers)
    if (!(f > 0)) throw std::invalid_argument("multipliers must be positive");
  std::vector<SensitivityRow> rows(multipliers.size());
  parallel_for(static_cast<int>(multipliers.size()), jobs, [&](int k) {
    Instance variant = inst;
    std::vector<Scenario> scaled = bundle;
    scale_problem(variant, scaled, param, multipliers[k]);
    auto out = solve_extensive(variant, scaled, limits);
    SensitivityRow& row = rows[k];
    row.multiplier = multipliers[k];
    row.cost = expected_breakdown(variant, out.solution, scaled);
    row.objective = row.cost.total();
    row.open_blocks = out.solution.open_room_days();
    for (int i = 0; i < variant.num_patients(); ++i) {
      const auto& slot = out.solution.assignment[i];
      if (!slot)
        ++row.postponed;
      else
        row.waiting_days += slot->day - variant.patients[i].earliest_day;
    }
    // Mean realized overtime minutes per scenario.
    double total = 0;
    for (size_t p = 0; p < scaled.size(); ++p)
      for (double o : overtime(variant, out.solution, scaled[p])) total += o;
    row.overtime_minutes = scaled.empty() ? 0 : total / static_cast<double>(scaled.size());
  });
  return rows;
}

std::vector<SeriesPoint> occupancy_series(const Instance& inst, const FirstStageSolution& sol,
                                          const std::vector<Scenario>& bundle) {
  const int S = inst.num_specialties(), D = inst.horizon_days;
  std::vector<double> q(static_cast<size_t>(S) * kDownstreams * D, 0.0);
  std::vector<double> v(q.size(), 0.0);
  for (size_t p = 0; p < bundle.size(); ++p) {
    auto out = evaluate(inst, sol, bundle[p], mix64(p));
    for (size_t k = 0; k < q.size(); ++k) {
      q[k] += out.shared_used[k];
      v[k] += out.surge_used[k];
    }
  }
  const double n = bundle.empty() ? 1.0 : static_cast<double>(bundle.size());
  std::vector<SeriesPoint> pts;
  pts.reserve(q.size());
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) {
        const size_t k = (static_cast<size_t>(s) * kDownstreams + h) * D + d;
        pts.push_back({d, h, s, q[k] / n, v[k] / n});
      }
  return pts;
}

std::string policy_csv(const PolicyComparison& cmp) {
  std::ostringstream os;
  os << "alpha_icu,alpha_ward,objective,waiting,postponement,or_fixed,overtime,surge,"
        "imp_percent,imp_waiting,imp_postponement,imp_or,imp_overtime,imp_surge\n";
  for (const auto& r : cmp.rows) {
    os << fmt(r.shared_fraction[kIcu]) << ',' << fmt(r.shared_fraction[kWard]) << ','
       << fmt(r.objective) << ',' << fmt(r.cost.waiting) << ',' << fmt(r.cost.postponement)
       << ',' << fmt(r.cost.or_fixed) << ',' << fmt(r.cost.overtime) << ','
       << fmt(r.cost.surge) << ',' << fmt(r.imp_percent) << ','
       << fmt(r.component_imp.waiting) << ',' << fmt(r.component_imp.postponement) << ','
       << fmt(r.component_imp.or_fixed) << ',' << fmt(r.component_imp.overtime) << ','
       << fmt(r.component_imp.surge) << '\n';
  }
  return os.str();
}

std::string sensitivity_csv(const std::vector<SensitivityRow>& rows) {
  std::ostringstream os;
  os << "multiplier,objective,waiting,postponement,or_fixed,overtime,surge,"
        "waiting_days,postponed,open_blocks,overtime_minutes\n";
  for (const auto& r : rows) {
    os << fmt(r.multiplier) << ',' << fmt(r.objective) << ',' << fmt(r.cost.waiting) << ','
       << fmt(r.cost.postponement) << ',' << fmt(r.cost.or_fixed) << ','
       << fmt(r.cost.overtime) << ',' << fmt(r.cost.surge) << ',' << fmt(r.waiting_days)
       << ',' << r.postponed << ',' << r.open_blocks << ',' << fmt(r.overtime_minutes)
       << '\n';
  }
  return os.str();
}

std::string series_csv(const std::vector<SeriesPoint>& pts) {
  std::ostringstream os;
  os << "day,downstream,specialty,mean_q,mean_v\n";
  for (const auto& p : pts)
    os << p.day << ',' << p.downstream << ',' << p.specialty << ',' << fmt(p.mean_q) << ','
       << fmt(p.mean_v) << '\n';
  return os.str();
}

}  // namespace orpool
