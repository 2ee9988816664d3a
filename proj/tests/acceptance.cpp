// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. The orplan binary path is taken from argv[1] for the CLI
// determinism criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "orpool/analysis.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/generator.hpp"
#include "orpool/json_io.hpp"
#include "orpool/milp/backend.hpp"
#include "orpool/milp/brute_force.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/rng.hpp"
#include "orpool/saa.hpp"
#include "orpool/sampler.hpp"
#include "orpool/validate.hpp"

using namespace orpool;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Fixture {
  Instance inst;
  FirstStageSolution sol;
  Scenario sc;
};

Fixture second_stage_fixture(std::mt19937_64& rng) {
  Fixture f;
  const int S = 1 + static_cast<int>(rng() % 4);   // <= 4 specialties
  const int D = 4 + static_cast<int>(rng() % 11);  // <= 14 days
  std::uniform_real_distribution<double> alpha(0.0, 1.0);
  std::uniform_int_distribution<int> beds(1, 8);
  f.inst = test::tiny_instance(rng, S, 2, D, 3 + static_cast<int>(rng() % 6), alpha(rng),
                               beds(rng), beds(rng));
  do {
    f.sol = test::random_feasible_solution(f.inst, rng);
  } while (!validate(f.inst, f.sol).empty());
  f.sc = test::random_scenario(f.inst, rng);
  return f;
}

// 1. evaluate() equals the LP optimum on >= 200 random second-stage fixtures.
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  auto backend = milp::make_backend();
  int checked = 0;
  double worst = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Fixture f = second_stage_fixture(rng);
    auto out = evaluate(f.inst, f.sol, f.sc, rep);
    auto lp = milp::build_second_stage_lp(f.inst, f.sol, f.sc);
    auto res = backend->solve(lp, {});
    if (res.status != milp::SolveStatus::Optimal) {
      report(1, false, "LP oracle did not solve to optimality");
      return;
    }
    const double rel = std::abs(out.recourse_cost - res.objective) /
                       std::max(1.0, std::abs(res.objective));
    worst = std::max(worst, rel);
    ++checked;
  }
  const double secs = elapsed_s(t0);
  std::ostringstream os;
  os << "specialized evaluator vs LP optimum on " << checked
     << " fixtures, worst relative error " << worst << " (" << secs << "s)";
  report(1, worst <= 1e-6 && secs < 120, os.str());
}

// 2. Recourse cost bit-identical across 20 random permutations, 50 fixtures.
void criterion2() {
  std::mt19937_64 rng(202);
  int mismatches = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Fixture f = second_stage_fixture(rng);
    std::vector<int> order(f.inst.num_specialties());
    std::iota(order.begin(), order.end(), 0);
    const double base = evaluate_with_order(f.inst, f.sol, f.sc, order).recourse_cost;
    for (int p = 0; p < 20; ++p) {
      std::shuffle(order.begin(), order.end(), rng);
      if (evaluate_with_order(f.inst, f.sol, f.sc, order).recourse_cost != base)
        ++mismatches;
    }
  }
  std::ostringstream os;
  os << "order invariance over 50 fixtures x 20 permutations, " << mismatches
     << " cost mismatches";
  report(2, mismatches == 0, os.str());
}

// 3. Extensive form equals brute force on >= 20 tiny instances.
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  auto backend = milp::make_backend();
  milp::SolverLimits tight;
  tight.rel_gap = 1e-9;
  int agreed = 0, total = 0;
  double worst = 0;
  for (int rep = 0; rep < 20; ++rep) {
    Instance inst = test::tiny_instance(rng, 2, 2, 3, 3 + static_cast<int>(rng() % 3));
    std::vector<Scenario> bundle;
    const int nsc = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < nsc; ++k) bundle.push_back(test::random_scenario(inst, rng));
    auto bf = milp::brute_force(inst, bundle);
    if (!bf.feasible) continue;
    auto em = milp::build_extensive(inst, bundle);
    auto out = milp::solve(inst, em, *backend, tight);
    if (out.status != milp::SolveStatus::Optimal) continue;
    const double tol = std::max(1e-6, tight.rel_gap) * std::max(1.0, std::abs(bf.objective));
    const double diff = std::abs(out.objective - bf.objective);
    worst = std::max(worst, diff / std::max(1.0, std::abs(bf.objective)));
    ++total;
    if (diff <= tol) ++agreed;
  }
  const double secs = elapsed_s(t0);
  std::ostringstream os;
  os << "solver vs brute force on " << total << " tiny instances, " << agreed
     << " agreed, worst relative diff " << worst << " (" << secs << "s)";
  report(3, total >= 20 && agreed == total && secs < 300, os.str());
}

// 4. Surge conservation on 10^4 random cells.
void criterion4() {
  std::mt19937_64 rng(404);
  int cells = 0, exact = 0;
  while (cells < 10000) {
    const int S = 1 + static_cast<int>(rng() % 5);
    const int D = 1 + static_cast<int>(rng() % 3);
    std::uniform_real_distribution<double> alpha(0.0, 1.0);
    Instance inst = test::tiny_instance(rng, S, 1, D, 0, alpha(rng),
                                        static_cast<int>(rng() % 12),
                                        static_cast<int>(rng() % 12));
    OccupancyTable occ;
    occ.specialties = S;
    occ.days = D;
    occ.count.resize(static_cast<size_t>(S) * kDownstreams * D);
    for (auto& c : occ.count) c = static_cast<int>(rng() % 7);
    std::vector<PerDownstream<int>> split(S, {0, 0});
    for (int h = 0; h < kDownstreams; ++h) {
      int budget = inst.nonshared_capacity(h);
      for (int s = 0; s < S && budget > 0; ++s) {
        int take = static_cast<int>(rng() % (budget + 1));
        split[s][h] = take;
        budget -= take;
      }
    }
    std::vector<int> order(S);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto alloc = allocate_shared(inst, occ, split, order);
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) {
        int overflow = 0, v = 0;
        for (int s = 0; s < S; ++s) {
          overflow += std::max(occ.at(s, h, d) - split[s][h], 0);
          v += alloc.surge_used[(static_cast<size_t>(s) * kDownstreams + h) * D + d];
        }
        ++cells;
        if (v == std::max(overflow - inst.shared_capacity(h), 0)) ++exact;
      }
  }
  std::ostringstream os;
  os << "surge conservation exact on " << exact << "/" << cells << " cells";
  report(4, exact == cells, os.str());
}

// 5. Pooling monotonicity: Obj(Full) <= Obj(Mid) <= Obj(No); mean Mid
// improvement strictly positive. Even bed stocks keep alpha*M integral.
void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  milp::SolverLimits lim;
  lim.rel_gap = 1e-3;
  int monotone = 0;
  double imp_sum = 0;
  const int n_inst = 10;
  for (int k = 0; k < n_inst; ++k) {
    GeneratorConfig cfg;
    cfg.weeks = 2;
    cfg.n_specialties = 4;
    cfg.seed = 5000 + k;
    cfg.patients_per_week = 12;
    cfg.bed_rule.kind = BedRule::Kind::Preset;
    cfg.bed_rule.preset_icu = 4;  // deliberately tight and even
    cfg.bed_rule.preset_ward = 8;
    Instance inst = generate(cfg);

    SamplerConfig sc;
    sc.seed = derive_seed(777, k);
    auto bundle = ScenarioSampler(inst, sc).sample_bundle(30);
    auto cmp = compare_policies(inst, bundle, {{0, 0}, {0.5, 0.5}, {1, 1}}, lim, 3);
    const double no = cmp.rows[0].objective, mid = cmp.rows[1].objective,
                 full = cmp.rows[2].objective;
    const double tol = lim.rel_gap * (no + mid + full);
    if (full <= mid + tol && mid <= no + tol) ++monotone;
    imp_sum += cmp.rows[1].imp_percent;
  }
  const double mean_imp = imp_sum / n_inst;
  const double secs = elapsed_s(t0);
  std::ostringstream os;
  os << "pooling direction on " << n_inst << " instances: " << monotone
     << " monotone, mean Mid-vs-No improvement " << mean_imp << "% (paper reports 11.29%; "
     << secs << "s)";
  report(5, monotone == n_inst && mean_imp > 0, os.str());
}

// 6+7. SAA gap sanity and VSS property on 5 small instances, --small profile.
void criteria6and7() {
  auto t0 = std::chrono::steady_clock::now();
  bool gap_ok = true, vss_ok = true;
  std::ostringstream gaps, vsses;
  for (int k = 0; k < 5; ++k) {
    GeneratorConfig cfg;
    cfg.weeks = 2;
    cfg.n_specialties = 3;
    cfg.seed = 6000 + k;
    cfg.patients_per_week = 12;
    Instance inst = generate(cfg);

    SaaConfig sa;
    sa.n_lb = 10;
    sa.m_iter = 5;
    sa.p_ub = 1000;
    sa.seed = 60 + k;
    sa.jobs = 5;
    sa.limits.rel_gap = 1e-3;
    SaaDriver driver(inst, sa);
    SaaReport rep = driver.run();
    driver.compute_vss(rep);

    const double sd_lb = rep.lb_var_of_mean ? std::sqrt(*rep.lb_var_of_mean) : 0.0;
    const double sd_ub = std::sqrt(rep.ub_var_of_mean);
    const bool finite = std::isfinite(rep.gap_percent);
    const bool above_noise =
        rep.best_ub >= rep.lb_mean - 2 * (sd_lb + sd_ub) - 1e-6 * rep.lb_mean;
    if (!finite || !above_noise || rep.gap_percent > 5.0) gap_ok = false;
    gaps << (k ? ", " : "") << rep.gap_percent << "%";
    if (!rep.vss_percent || *rep.vss_percent < -0.5) vss_ok = false;
    vsses << (k ? ", " : "") << (rep.vss_percent ? *rep.vss_percent : -999.0) << "%";
  }
  const double secs = elapsed_s(t0);
  report(6, gap_ok, "SAA small-profile gaps on 5 instances: " + gaps.str() + " (" +
                        std::to_string(secs) + "s)");
  report(7, vss_ok,
         "VSS with common random numbers on the same instances: " + vsses.str() +
             " (paper reports 17.43% average at server scale)");
}

// 8. Duration sampling statistics for the General specialty.
void criterion8() {
  const auto& general = reference_specialties()[0];
  Instance inst;
  inst.horizon_days = 7;
  inst.rooms = 1;
  inst.regular_time = 480;
  inst.max_overtime = 180;
  inst.bed_stock = {5, 5};
  inst.shared_fraction = {0.5, 0.5};
  SpecialtyProfile sp = general;
  inst.specialties = {sp};
  Patient p;
  p.specialty = 0;
  p.mean_duration = general.mean_duration;
  p.max_duration = 1.5 * general.mean_duration;
  p.mean_los_total = general.mean_los_total();
  p.sd_los = general.sd_los;
  p.eligible_rooms = {0};
  inst.patients = {p};
  inst.block_bounds = {{0, 7}};

  SamplerConfig cfg;
  cfg.seed = 808;
  ScenarioSampler sampler(inst, cfg);
  const int n = 100000;
  double sum = 0, sum2 = 0;
  bool in_range = true;
  for (int k = 0; k < n; ++k) {
    Scenario sc = sampler.sample_scenario();
    const double t = sc.durations[0];
    sum += t;
    sum2 += t * t;
    in_range &= (t >= 0.5 * general.mean_duration - 1e-9 &&
                 t <= 1.5 * general.mean_duration + 1e-9);
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  // Draws use sigma = mu/6 (=25.16 for General); +-3 sigma truncation trims
  // the tails by well under the stated tolerances.
  const bool mean_ok = std::abs(mean - 150.95) / 150.95 <= 0.02;
  const bool sd_ok = std::abs(sd - 25.16) / 25.16 <= 0.03;
  std::ostringstream os;
  os << "100k General draws: mean " << mean << " (target 150.95 +-2%), sd " << sd
     << " (target 25.16 +-3%), all in [0.5mu, 1.5mu]: " << (in_range ? "yes" : "no");
  report(8, mean_ok && sd_ok && in_range, os.str());
}

// 9. CLI determinism: byte-identical artifacts on reruns.
void criterion9(const std::string& orplan) {
  if (orplan.empty()) {
    report(9, false, "orplan path not supplied to the acceptance binary");
    return;
  }
  const fs::path dir = fs::temp_directory_path() / "orpool_accept9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const std::string cmd = orplan + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto same = [&](const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return fa.good() == fb.good() && sa.str() == sb.str() && !sa.str().empty();
  };
  const std::string inst = (dir / "inst.json").string();
  bool ok = true;
  std::string detail = "generate/saa/compare/sensitivity/series/sample reruns byte-identical";
  struct Step {
    std::string name, args_a, args_b;
    fs::path a, b;
  };
  std::vector<Step> steps;
  const std::string gen = "generate --weeks 2 --specialties 2 --patients-per-week 8 --seed 5 -o ";
  steps.push_back({"generate", gen + (dir / "g1.json").string(),
                   gen + (dir / "g2.json").string(), dir / "g1.json", dir / "g2.json"});
  if (!run(gen + inst)) {
    report(9, false, "instance generation failed");
    return;
  }
  const std::string saa =
      " saa -i " + inst + " --n 3 --m 2 --p 50 --seed 4 --jobs 3 --gap 0.01 -o ";
  steps.push_back({"saa", saa.substr(1) + (dir / "s1.json").string(),
                   saa.substr(1) + (dir / "s2.json").string(), dir / "s1.json",
                   dir / "s2.json"});
  const std::string cmp =
      "compare -i " + inst + " --scenarios 4 --seed 3 --jobs 3 --gap 0.01 -o ";
  steps.push_back({"compare", cmp + (dir / "c1.csv").string(),
                   cmp + (dir / "c2.csv").string(), dir / "c1.csv", dir / "c2.csv"});
  const std::string sens = "sensitivity -i " + inst +
                           " --param surge --multipliers 1,2 --scenarios 3 --seed 3 "
                           "--jobs 2 --gap 0.01 -o ";
  steps.push_back({"sensitivity", sens + (dir / "x1.csv").string(),
                   sens + (dir / "x2.csv").string(), dir / "x1.csv", dir / "x2.csv"});
  const std::string ser = "series -i " + inst + " --scenarios 3 --seed 2 --gap 0.01 -o ";
  steps.push_back({"series", ser + (dir / "e1.csv").string(),
                   ser + (dir / "e2.csv").string(), dir / "e1.csv", dir / "e2.csv"});
  const std::string smp = "sample -i " + inst + " --count 6 --seed 11 -o ";
  steps.push_back({"sample", smp + (dir / "b1.jsonl").string(),
                   smp + (dir / "b2.jsonl").string(), dir / "b1.jsonl", dir / "b2.jsonl"});

  for (const auto& st : steps) {
    if (!run(st.args_a) || !run(st.args_b) || !same(st.a, st.b)) {
      ok = false;
      detail = "subcommand '" + st.name + "' is not reproducible";
      break;
    }
  }
  report(9, ok, detail);
}

// 10. Sensitivity identity gate plus reported directions.
void criterion10() {
  GeneratorConfig cfg;
  cfg.weeks = 2;
  cfg.n_specialties = 3;
  cfg.seed = 1010;
  cfg.patients_per_week = 10;
  Instance inst = generate(cfg);
  SamplerConfig sc;
  sc.seed = 10;
  auto bundle = ScenarioSampler(inst, sc).sample_bundle(10);
  milp::SolverLimits lim;
  lim.rel_gap = 1e-3;

  // Gate: the multiplier-1 row is byte-identical across parameter sweeps.
  const std::string base =
      sensitivity_csv(sensitivity_sweep(inst, bundle, SensParam::Waiting, {1.0}, lim));
  bool identity = true;
  for (SensParam p : {SensParam::Or, SensParam::Surge, SensParam::Postpone,
                      SensParam::Overtime, SensParam::Duration, SensParam::Los})
    identity &= (sensitivity_csv(sensitivity_sweep(inst, bundle, p, {1.0}, lim)) == base);

  // Reported (non-gating) directions from Table 4.
  auto ot = sensitivity_sweep(inst, bundle, SensParam::Overtime, {1.0, 10.0}, lim, 2);
  auto sg = sensitivity_sweep(inst, bundle, SensParam::Surge, {1.0, 10.0}, lim, 2);
  std::ostringstream os;
  os << "multiplier-1 identity " << (identity ? "holds" : "BROKEN")
     << "; overtime minutes at alpha^overtime 1 -> 10: " << ot[0].overtime_minutes << " -> "
     << ot[1].overtime_minutes << " (expect non-increasing); postponements at alpha^surge 1"
     << " -> 10: " << sg[0].postponed << " -> " << sg[1].postponed
     << " (expect non-decreasing)";
  report(10, identity, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string orplan = argc > 1 ? argv[1] : "";
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criteria6and7();
  criterion8();
  criterion9(orplan);
  criterion10();
  std::printf("%s: %d criterion failure(s)\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
