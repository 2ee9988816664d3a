// orplan: instance generation, extensive-form SAA solving, policy comparison,
// sensitivity sweeps, and tuning grids, all seeded and reproducible.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orpool/analysis.hpp"
#include "orpool/generator.hpp"
#include "orpool/json_io.hpp"
#include "orpool/milp/backend.hpp"
#include "orpool/rng.hpp"
#include "orpool/saa.hpp"
#include "orpool/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace orpool;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

// Output artifacts carry the resolved run configuration; CSV files get it as
// a leading comment line so the data rows stay machine-readable.
std::string with_config_header(const json& cfg, const std::string& csv) {
  return "# config " + cfg.dump() + "\n" + csv;
}

std::vector<Scenario> sample_bundle_for(const Instance& inst, int count, std::uint64_t seed) {
  SamplerConfig sc;
  sc.seed = seed;
  ScenarioSampler sampler(inst, sc);
  return sampler.sample_bundle(count);
}

struct CommonOpts {
  std::uint64_t seed = 0;
  int jobs = 1;
  double gap = 1e-4;
  double time_limit = 3600;
};

milp::SolverLimits limits_of(const CommonOpts& c) {
  milp::SolverLimits lim;
  lim.rel_gap = c.gap;
  lim.time_limit_s = c.time_limit;
  return lim;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "Base RNG seed");
  cmd->add_option("--jobs", c.jobs, "Max concurrent solver sessions / workers")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gap", c.gap, "Relative MIP gap");
  cmd->add_option("--time-limit", c.time_limit, "Per-solve time limit, seconds");
}

json common_json(const CommonOpts& c) {
  return {{"seed", c.seed}, {"jobs", c.jobs}, {"gap", c.gap}, {"time_limit", c.time_limit}};
}

int cmd_generate(int weeks, int specialties, std::uint64_t seed, const std::string& beds,
                 bool grid, int replications, int per_week, const std::string& out) {
  BedRule rule;
  if (beds == "preset")
    rule.kind = BedRule::Kind::Preset;
  else if (beds != "formula")
    throw CLI::ValidationError("--beds must be 'formula' or 'preset'");

  if (!grid) {
    GeneratorConfig cfg;
    cfg.weeks = weeks;
    cfg.n_specialties = specialties;
    cfg.seed = seed;
    cfg.bed_rule = rule;
    cfg.patients_per_week = per_week;
    Instance inst = generate(cfg);
    json j = to_json(inst);
    j["config"] = {{"weeks", weeks}, {"specialties", specialties}, {"seed", seed},
                   {"beds", beds}, {"patients_per_week", per_week}};
    write_file(out, j.dump(2) + "\n");
    return 0;
  }

  fs::create_directories(out);
  json manifest;
  manifest["config"] = {{"grid", true}, {"replications", replications}, {"seed", seed},
                        {"beds", beds}};
  manifest["instances"] = json::array();
  for (int w = 2; w <= 4; ++w)
    for (int s = 1; s <= 7; ++s)
      for (int rep = 0; rep < replications; ++rep) {
        GeneratorConfig cfg;
        cfg.weeks = w;
        cfg.n_specialties = s;
        cfg.seed = grid_seed(seed, w, s, rep);
        cfg.bed_rule = rule;
        cfg.patients_per_week = per_week;
        Instance inst = generate(cfg);
        char name[64];
        std::snprintf(name, sizeof(name), "inst_w%d_s%d_r%02d.json", w, s, rep);
        json j = to_json(inst);
        j["config"] = {{"weeks", w}, {"specialties", s}, {"seed", cfg.seed}, {"beds", beds}};
        write_file((fs::path(out) / name).string(), j.dump(2) + "\n");
        manifest["instances"].push_back(
            {{"file", name}, {"weeks", w}, {"specialties", s}, {"replication", rep},
             {"seed", cfg.seed}});
      }
  write_file((fs::path(out) / "manifest.json").string(), manifest.dump(2) + "\n");
  return 0;
}

int cmd_saa(const std::string& in, const std::string& out, bool small, int n, int m, int p,
            bool no_vss, const CommonOpts& common) {
  Instance inst = load_instance(in);
  SaaConfig cfg;
  cfg.n_lb = small ? 10 : 30;
  cfg.m_iter = small ? 5 : 25;
  cfg.p_ub = small ? 1000 : 6000;
  if (n > 0) cfg.n_lb = n;
  if (m > 0) cfg.m_iter = m;
  if (p > 0) cfg.p_ub = p;
  cfg.seed = common.seed;
  cfg.jobs = common.jobs;
  cfg.limits = limits_of(common);

  SaaDriver driver(inst, cfg);
  SaaReport report = driver.run();
  if (!no_vss) driver.compute_vss(report);

  json j;
  j["config"] = common_json(common);
  j["config"]["instance"] = in;
  j["config"]["n_lb"] = cfg.n_lb;
  j["config"]["m_iter"] = cfg.m_iter;
  j["config"]["p_ub"] = cfg.p_ub;
  j["report"] = to_json(report);
  write_file(out, j.dump(2) + "\n");
  std::fprintf(stderr, "saa: lb=%.2f ub=%.2f gap=%.3f%% (lb %.1fs, ub %.1fs)\n",
               report.lb_mean, report.best_ub, report.gap_percent, report.lb_seconds,
               report.ub_seconds);
  return 0;
}

int cmd_compare(const std::string& in, const std::string& out,
                const std::vector<double>& policies, int scenarios, const CommonOpts& common) {
  Instance inst = load_instance(in);
  auto bundle = sample_bundle_for(inst, scenarios, common.seed);
  std::vector<PerDownstream<double>> alphas;
  for (double a : policies) alphas.push_back({a, a});
  auto cmp = compare_policies(inst, bundle, alphas, limits_of(common), common.jobs);
  json cfg = common_json(common);
  cfg["instance"] = in;
  cfg["policies"] = policies;
  cfg["scenarios"] = scenarios;
  write_file(out, with_config_header(cfg, policy_csv(cmp)));
  return 0;
}

int cmd_sensitivity(const std::string& in, const std::string& out, const std::string& param,
                    const std::vector<double>& multipliers, int scenarios,
                    const CommonOpts& common) {
  Instance inst = load_instance(in);
  auto bundle = sample_bundle_for(inst, scenarios, common.seed);
  auto rows =
      sensitivity_sweep(inst, bundle, sens_param_from_string(param), multipliers,
                        limits_of(common), common.jobs);
  json cfg = common_json(common);
  cfg["instance"] = in;
  cfg["param"] = param;
  cfg["multipliers"] = multipliers;
  cfg["scenarios"] = scenarios;
  write_file(out, with_config_header(cfg, sensitivity_csv(rows)));
  return 0;
}

int cmd_series(const std::string& in, const std::string& out, int scenarios,
               const CommonOpts& common) {
  Instance inst = load_instance(in);
  auto bundle = sample_bundle_for(inst, scenarios, common.seed);
  auto em = milp::build_extensive(inst, bundle);
  auto backend = milp::make_backend();
  auto sol = milp::solve(inst, em, *backend, limits_of(common));
  if (sol.status == milp::SolveStatus::Infeasible)
    throw std::runtime_error("extensive form infeasible");
  auto pts = occupancy_series(inst, sol.solution, bundle);
  json cfg = common_json(common);
  cfg["instance"] = in;
  cfg["scenarios"] = scenarios;
  write_file(out, with_config_header(cfg, series_csv(pts)));
  return 0;
}

int cmd_sample(const std::string& in, const std::string& out, int count,
               const CommonOpts& common) {
  Instance inst = load_instance(in);
  save_bundle(sample_bundle_for(inst, count, common.seed), out);
  return 0;
}

int cmd_tune(const std::string& in, const std::string& out, const std::vector<int>& n_grid,
             const std::vector<int>& m_grid, const std::vector<int>& p_grid,
             const CommonOpts& common) {
  Instance inst = load_instance(in);
  std::ostringstream csv;
  csv << "n,m,p,lb,sd_lb,ub,sd_ub,gap_percent,rsd\n";
  for (int n : n_grid)
    for (int m : m_grid)
      for (int p : p_grid) {
        SaaConfig cfg;
        cfg.n_lb = n;
        cfg.m_iter = m;
        cfg.p_ub = p;
        cfg.seed = common.seed;
        cfg.jobs = common.jobs;
        cfg.limits = limits_of(common);
        SaaDriver driver(inst, cfg);
        SaaReport rep = driver.run();
        const double sd_lb =
            rep.lb_var_of_mean ? std::sqrt(*rep.lb_var_of_mean) : 0.0;
        const double sd_ub = std::sqrt(rep.ub_var_of_mean);
        const double rsd = rep.lb_mean != 0 ? sd_lb / rep.lb_mean : 0.0;
        char row[256];
        std::snprintf(row, sizeof(row), "%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", n, m, p,
                      rep.lb_mean, sd_lb, rep.best_ub, sd_ub, rep.gap_percent, rsd);
        csv << row;
        std::fprintf(stderr, "tune n=%d m=%d p=%d: gap=%.3f%% (lb %.1fs, ub %.1fs)\n", n, m,
                     p, rep.gap_percent, rep.lb_seconds, rep.ub_seconds);
      }
  json cfg = common_json(common);
  cfg["instance"] = in;
  cfg["n_grid"] = n_grid;
  cfg["m_grid"] = m_grid;
  cfg["p_grid"] = p_grid;
  write_file(out, with_config_header(cfg, csv.str()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operating-room planning with pooled downstream beds"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate benchmark instances");
  int weeks = 2, specialties = 4, replications = 5, per_week = 60;
  std::uint64_t gen_seed = 0;
  std::string beds = "formula", gen_out;
  bool grid = false;
  gen->add_option("--weeks", weeks, "Planning horizon in weeks")->check(CLI::Range(1, 8));
  gen->add_option("--specialties", specialties, "Number of specialties")
      ->check(CLI::Range(1, 7));
  gen->add_option("--seed", gen_seed, "Base RNG seed");
  gen->add_option("--beds", beds, "Bed stock rule: formula | preset");
  gen->add_flag("--grid", grid, "Emit the full (weeks x specialties) benchmark grid");
  gen->add_option("--replications", replications, "Replications per grid cell")
      ->check(CLI::PositiveNumber);
  gen->add_option("--patients-per-week", per_week, "Arrivals per week")
      ->check(CLI::PositiveNumber);
  gen->add_option("-o,--out", gen_out, "Output file (or directory with --grid)")->required();

  // saa
  auto* saa = app.add_subcommand("saa", "SAA bounds, gap and VSS for one instance");
  std::string saa_in, saa_out;
  bool small = false, no_vss = false;
  int n_override = 0, m_override = 0, p_override = 0;
  CommonOpts saa_common;
  saa->add_option("-i,--instance", saa_in, "Instance JSON")->required();
  saa->add_option("-o,--out", saa_out, "Report JSON")->required();
  saa->add_flag("--small", small, "Desk-scale profile (N=10, M=5, P=1000)");
  saa->add_option("--n", n_override, "Scenarios per lower-bound solve");
  saa->add_option("--m", m_override, "Lower-bound iterations");
  saa->add_option("--p", p_override, "Upper-bound scenarios");
  saa->add_flag("--no-vss", no_vss, "Skip the EVP solve / VSS estimate");
  add_common(saa, saa_common);

  // compare
  auto* cmp = app.add_subcommand("compare", "Pooling-policy comparison on a common bundle");
  std::string cmp_in, cmp_out;
  std::vector<double> policies{0.0, 0.5, 1.0};
  int cmp_scen = 30;
  CommonOpts cmp_common;
  cmp->add_option("-i,--instance", cmp_in, "Instance JSON")->required();
  cmp->add_option("-o,--out", cmp_out, "CSV output")->required();
  cmp->add_option("--policies", policies, "Shared fractions, comma separated")
      ->delimiter(',');
  cmp->add_option("--scenarios", cmp_scen, "Common bundle size")->check(CLI::PositiveNumber);
  add_common(cmp, cmp_common);

  // sensitivity
  auto* sens = app.add_subcommand("sensitivity", "Cost/parameter multiplier sweep");
  std::string sens_in, sens_out, sens_param = "surge";
  std::vector<double> multipliers{0.5, 0.75, 1.0, 1.25, 1.5};
  int sens_scen = 30;
  CommonOpts sens_common;
  sens->add_option("-i,--instance", sens_in, "Instance JSON")->required();
  sens->add_option("-o,--out", sens_out, "CSV output")->required();
  sens->add_option("--param", sens_param,
                   "One of waiting, or, surge, postpone, overtime, duration, los");
  sens->add_option("--multipliers", multipliers, "Multipliers, comma separated")
      ->delimiter(',');
  sens->add_option("--scenarios", sens_scen, "Bundle size")->check(CLI::PositiveNumber);
  add_common(sens, sens_common);

  // series
  auto* ser = app.add_subcommand("series", "Mean shared/surge occupancy per day");
  std::string ser_in, ser_out;
  int ser_scen = 30;
  CommonOpts ser_common;
  ser->add_option("-i,--instance", ser_in, "Instance JSON")->required();
  ser->add_option("-o,--out", ser_out, "CSV output")->required();
  ser->add_option("--scenarios", ser_scen, "Bundle size")->check(CLI::PositiveNumber);
  add_common(ser, ser_common);

  // sample
  auto* smp = app.add_subcommand("sample", "Sample a scenario bundle to JSONL");
  std::string smp_in, smp_out;
  int smp_count = 30;
  CommonOpts smp_common;
  smp->add_option("-i,--instance", smp_in, "Instance JSON")->required();
  smp->add_option("-o,--out", smp_out, "Bundle JSONL output")->required();
  smp->add_option("--count", smp_count, "Number of scenarios")->check(CLI::PositiveNumber);
  add_common(smp, smp_common);

  // tune
  auto* tune = app.add_subcommand("tune", "SAA parameter grid: gap/RSD per (N, M, P) cell");
  std::string tune_in, tune_out;
  std::vector<int> n_grid{5, 10}, m_grid{3, 5}, p_grid{500};
  CommonOpts tune_common;
  tune->add_option("-i,--instance", tune_in, "Instance JSON")->required();
  tune->add_option("-o,--out", tune_out, "CSV output")->required();
  tune->add_option("--n-grid", n_grid, "Lower-bound scenario counts")->delimiter(',');
  tune->add_option("--m-grid", m_grid, "Iteration counts")->delimiter(',');
  tune->add_option("--p-grid", p_grid, "Upper-bound scenario counts")->delimiter(',');
  add_common(tune, tune_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(weeks, specialties, gen_seed, beds, grid, replications, per_week, gen_out);
    if (saa->parsed())
      return cmd_saa(saa_in, saa_out, small, n_override, m_override, p_override, no_vss,
                     saa_common);
    if (cmp->parsed()) return cmd_compare(cmp_in, cmp_out, policies, cmp_scen, cmp_common);
    if (sens->parsed())
      return cmd_sensitivity(sens_in, sens_out, sens_param, multipliers, sens_scen,
                             sens_common);
    if (ser->parsed()) return cmd_series(ser_in, ser_out, ser_scen, ser_common);
    if (smp->parsed()) return cmd_sample(smp_in, smp_out, smp_count, smp_common);
    if (tune->parsed())
      return cmd_tune(tune_in, tune_out, n_grid, m_grid, p_grid, tune_common);
  } catch (const milp::BackendUnavailable& e) {
    std::fprintf(stderr, "solver backend unavailable: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
