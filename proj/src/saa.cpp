#include "orpool/saa.hpp"

#include <chrono>
#include <future>
#include <numeric>
#include <semaphore>
#include <stdexcept>

#include "orpool/cost.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/rng.hpp"
#include "orpool/validate.hpp"

namespace orpool {

namespace {

// Deterministic pairwise reduction; independent of evaluation order.
double pairwise_sum(const std::vector<double>& xs, size_t lo, size_t hi) {
  if (hi - lo <= 8) {
    double s = 0;
    for (size_t i = lo; i < hi; ++i) s += xs[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double pairwise_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  return pairwise_sum(xs, 0, xs.size()) / xs.size();
}

double var_of_mean(const std::vector<double>& xs, double mean) {
  const size_t n = xs.size();
  if (n < 2) return 0;
  std::vector<double> sq(n);
  for (size_t i = 0; i < n; ++i) sq[i] = (xs[i] - mean) * (xs[i] - mean);
  return pairwise_sum(sq, 0, n) / (static_cast<double>(n) * (n - 1));
}

SaaDriver::SaaDriver(const Instance& inst, SaaConfig cfg) : inst_(inst), cfg_(cfg) {
  if (cfg_.n_lb < 1 || cfg_.m_iter < 1 || cfg_.p_ub < 1)
    throw std::invalid_argument("SAA counts must be >= 1");
  SamplerConfig sc = cfg_.sampler;
  sc.seed = derive_seed(cfg_.seed, 0x5AAB0BULL);
  ScenarioSampler sampler(inst_, sc);
  ub_bundle_ = sampler.sample_bundle(cfg_.p_ub);
}

std::vector<Scenario> SaaDriver::lb_bundle(int iteration) const {
  SamplerConfig sc = cfg_.sampler;
  sc.seed = derive_seed(cfg_.seed, 1 + static_cast<std::uint64_t>(iteration));
  ScenarioSampler sampler(inst_, sc);
  return sampler.sample_bundle(cfg_.n_lb);
}

std::vector<LowerBoundIteration> SaaDriver::run_lower_bounds() {
  std::vector<LowerBoundIteration> iters(cfg_.m_iter);
  std::counting_semaphore<> slots(std::max(cfg_.jobs, 1));
  std::vector<std::future<void>> futures;
  for (int m = 0; m < cfg_.m_iter; ++m) {
    futures.push_back(std::async(std::launch::async, [this, m, &iters, &slots] {
      slots.acquire();
      auto t0 = std::chrono::steady_clock::now();
      try {
        auto scenarios = lb_bundle(m);
        auto em = milp::build_extensive(inst_, scenarios);
        auto backend = milp::make_backend();
        auto out = milp::solve(inst_, em, *backend, cfg_.limits);
        iters[m].status = out.status;
        if (out.status != milp::SolveStatus::Infeasible) {
          iters[m].solution = out.solution;
          iters[m].objective = out.objective;
        }
      } catch (...) {
        slots.release();
        iters[m].status = milp::SolveStatus::Infeasible;
        throw;
      }
      iters[m].seconds = seconds_since(t0);
      slots.release();
    }));
  }
  for (auto& f : futures) f.get();
  return iters;
}

UpperBoundEstimate SaaDriver::evaluate_upper_bound(const FirstStageSolution& sol) const {
  require_valid(inst_, sol);
  const double fs = first_stage_cost(inst_, sol);
  std::vector<double> recourse(ub_bundle_.size());

  const int jobs = std::max(cfg_.jobs, 1);
  const size_t n = ub_bundle_.size();
  std::vector<std::future<void>> futures;
  const size_t chunk = (n + jobs - 1) / jobs;
  for (int w = 0; w < jobs; ++w) {
    const size_t lo = w * chunk, hi = std::min(n, (w + 1) * chunk);
    if (lo >= hi) break;
    futures.push_back(std::async(std::launch::async, [this, &sol, &recourse, lo, hi] {
      for (size_t p = lo; p < hi; ++p)
        recourse[p] =
            evaluate(inst_, sol, ub_bundle_[p], derive_seed(cfg_.seed, 0x0DDB0000ULL + p))
                .recourse_cost;
    }));
  }
  for (auto& f : futures) f.get();

  UpperBoundEstimate est;
  est.first_stage = fs;
  const double mean_recourse = pairwise_mean(recourse);
  est.mean = fs + mean_recourse;
  est.var_of_mean = var_of_mean(recourse, mean_recourse);
  return est;
}

CostBreakdown SaaDriver::breakdown_on_bundle(const FirstStageSolution& sol) const {
  CostBreakdown cb = first_stage_breakdown(inst_, sol);
  std::vector<double> surge(ub_bundle_.size()), ot(ub_bundle_.size());
  for (size_t p = 0; p < ub_bundle_.size(); ++p) {
    auto out = evaluate(inst_, sol, ub_bundle_[p], derive_seed(cfg_.seed, 0x0DDB0000ULL + p));
    double ot_min = std::accumulate(out.overtime.begin(), out.overtime.end(), 0.0);
    ot[p] = inst_.overtime_cost_rate * ot_min;
    surge[p] = out.recourse_cost - ot[p];
  }
  cb.surge = pairwise_mean(surge);
  cb.overtime = pairwise_mean(ot);
  return cb;
}

SaaReport SaaDriver::run() {
  SaaReport rep;
  auto t0 = std::chrono::steady_clock::now();
  auto iters = run_lower_bounds();
  rep.lb_seconds = seconds_since(t0);

  std::vector<const LowerBoundIteration*> ok;
  for (const auto& it : iters)
    if (it.status != milp::SolveStatus::Infeasible) ok.push_back(&it);
  if (ok.empty()) throw std::runtime_error("all lower-bound iterations failed");

  for (const auto* it : ok) rep.lb_objectives.push_back(it->objective);
  rep.lb_mean = pairwise_mean(rep.lb_objectives);
  if (rep.lb_objectives.size() >= 2)
    rep.lb_var_of_mean = var_of_mean(rep.lb_objectives, rep.lb_mean);

  auto t1 = std::chrono::steady_clock::now();
  for (const auto* it : ok) rep.ub_per_candidate.push_back(evaluate_upper_bound(it->solution));
  rep.ub_seconds = seconds_since(t1);

  rep.best_candidate = 0;
  for (size_t c = 1; c < rep.ub_per_candidate.size(); ++c)
    if (rep.ub_per_candidate[c].mean < rep.ub_per_candidate[rep.best_candidate].mean)
      rep.best_candidate = static_cast<int>(c);
  rep.best_ub = rep.ub_per_candidate[rep.best_candidate].mean;
  rep.ub_var_of_mean = rep.ub_per_candidate[rep.best_candidate].var_of_mean;
  rep.best_solution = ok[rep.best_candidate]->solution;
  rep.best_cost = breakdown_on_bundle(rep.best_solution);
  rep.gap_percent = 100.0 * (rep.best_ub - rep.lb_mean) / rep.lb_mean;
  return rep;
}

void SaaDriver::compute_vss(SaaReport& report) {
  auto em = milp::build_evp(inst_, ub_bundle_);
  auto backend = milp::make_backend();
  auto out = milp::solve(inst_, em, *backend, cfg_.limits);
  if (out.status == milp::SolveStatus::Infeasible)
    throw std::runtime_error("EVP solve infeasible");
  const double ub_evp = evaluate_upper_bound(out.solution).mean;
  report.vss_percent = 100.0 * (ub_evp - report.best_ub) / ub_evp;
}

nlohmann::json to_json(const SaaReport& r) {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : r.ub_per_candidate)
    cands.push_back({{"mean", c.mean},
                     {"var_of_mean", c.var_of_mean},
                     {"first_stage", c.first_stage}});
  nlohmann::json j{
      {"lb_mean", r.lb_mean},
      {"lb_objectives", r.lb_objectives},
      {"ub_candidates", cands},
      {"best_candidate", r.best_candidate},
      {"best_ub", r.best_ub},
      {"ub_var_of_mean", r.ub_var_of_mean},
      {"gap_percent", r.gap_percent},
      {"cost_breakdown",
       {{"waiting", r.best_cost.waiting},
        {"postponement", r.best_cost.postponement},
        {"or_fixed", r.best_cost.or_fixed},
        {"overtime", r.best_cost.overtime},
        {"surge", r.best_cost.surge},
        {"total", r.best_cost.total()}}},
  };
  j["lb_var_of_mean"] = r.lb_var_of_mean ? nlohmann::json(*r.lb_var_of_mean) : nlohmann::json();
  j["vss_percent"] = r.vss_percent ? nlohmann::json(*r.vss_percent) : nlohmann::json();
  return j;
}

}  // namespace orpool
