#include "orpool/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace orpool {

ScenarioSampler::ScenarioSampler(const Instance& inst, SamplerConfig cfg)
    : inst_(inst), cfg_(cfg), rng_(cfg.seed) {
  if (cfg_.truncation_sigmas <= 0) throw std::invalid_argument("truncation_sigmas must be > 0");
  if (cfg_.icu_share < 0 || cfg_.icu_share > 1)
    throw std::invalid_argument("icu_share must be in [0,1]");
}

double ScenarioSampler::sample_duration(const Patient& p) {
  const double mu = p.mean_duration;
  const double sigma = mu / 6.0;
  const double lo = mu - cfg_.truncation_sigmas * sigma;
  const double hi = std::min(mu + cfg_.truncation_sigmas * sigma, p.max_duration);
  std::normal_distribution<double> normal(mu, sigma);
  // Rejection sampling; acceptance ~99.7% for the default 3-sigma window.
  for (;;) {
    double t = normal(rng_);
    if (t >= lo && t <= hi) return t;
  }
}

PerDownstream<int> ScenarioSampler::split_los(double raw_total, double icu_share) {
  int total = static_cast<int>(std::lround(std::max(raw_total, 0.0)));
  int icu = static_cast<int>(std::lround(icu_share * total));
  return {icu, total - icu};
}

PerDownstream<int> ScenarioSampler::sample_los(const Patient& p, double* total_raw) {
  std::normal_distribution<double> normal(p.mean_los_total, p.sd_los);
  double raw = std::max(normal(rng_), 0.0);
  if (total_raw) *total_raw = raw;
  return split_los(raw, cfg_.icu_share);
}

Scenario ScenarioSampler::sample_scenario() {
  Scenario sc;
  const int n = inst_.num_patients();
  sc.durations.resize(n);
  sc.los_total_raw.resize(n);
  sc.los.resize(n);
  for (int i = 0; i < n; ++i) {
    const Patient& p = inst_.patients[i];
    sc.durations[i] = sample_duration(p);
    sc.los[i] = sample_los(p, &sc.los_total_raw[i]);
  }
  if (cfg_.carryover_fraction > 0) {
    const int S = inst_.num_specialties();
    const int D = inst_.horizon_days;
    sc.carryover.assign(static_cast<size_t>(S) * kDownstreams * D, 0);
    for (int s = 0; s < S; ++s)
      for (int h = 0; h < kDownstreams; ++h) {
        double level = cfg_.carryover_fraction * inst_.bed_stock[h] / std::max(S, 1);
        for (int d = 0; d < D; ++d) {
          int beds = static_cast<int>(std::floor(level));
          if (beds <= 0) break;
          sc.carryover[(static_cast<size_t>(s) * kDownstreams + h) * D + d] = beds;
          level *= cfg_.carryover_fraction;
        }
      }
  }
  return sc;
}

std::vector<Scenario> ScenarioSampler::sample_bundle(int count) {
  std::vector<Scenario> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample_scenario());
  return out;
}

Scenario scale_durations(const Scenario& sc, double factor) {
  Scenario out = sc;
  for (double& t : out.durations) t *= factor;
  return out;
}

Scenario scale_los(const Scenario& sc, double factor, double icu_share) {
  Scenario out = sc;
  for (size_t i = 0; i < sc.los.size(); ++i) {
    out.los_total_raw[i] = sc.los_total_raw[i] * factor;
    out.los[i] = ScenarioSampler::split_los(out.los_total_raw[i], icu_share);
  }
  return out;
}

}  // namespace orpool
