// Python bindings for the core operations: generation, sampling, closed-form
// recourse evaluation, extensive-form solving, SAA, and the experiment
// harness. Structured artifacts cross the boundary as JSON strings so the
// schema stays identical to the CLI's.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "orpool/analysis.hpp"
#include "orpool/cost.hpp"
#include "orpool/evaluator.hpp"
#include "orpool/generator.hpp"
#include "orpool/json_io.hpp"
#include "orpool/milp/backend.hpp"
#include "orpool/milp/build.hpp"
#include "orpool/saa.hpp"
#include "orpool/sampler.hpp"
#include "orpool/validate.hpp"

namespace py = pybind11;
using namespace orpool;

namespace {

milp::SolverLimits limits(double rel_gap, double time_limit) {
  milp::SolverLimits lim;
  lim.rel_gap = rel_gap;
  lim.time_limit_s = time_limit;
  return lim;
}

std::vector<PerDownstream<double>> to_policies(const std::vector<double>& alphas) {
  std::vector<PerDownstream<double>> out;
  for (double a : alphas) out.push_back({a, a});
  return out;
}

}  // namespace

PYBIND11_MODULE(_orpool, m) {
  m.doc() = "Two-stage stochastic OR planning with pooled downstream beds";

  py::class_<Instance>(m, "Instance")
      .def_static("from_json",
                  [](const std::string& s) { return instance_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const Instance& i) { return to_json(i).dump(); })
      .def_property_readonly("num_patients", &Instance::num_patients)
      .def_property_readonly("num_specialties", &Instance::num_specialties)
      .def_property_readonly("horizon_days", [](const Instance& i) { return i.horizon_days; })
      .def_property_readonly("rooms", [](const Instance& i) { return i.rooms; })
      .def("shared_capacity", &Instance::shared_capacity)
      .def("nonshared_capacity", &Instance::nonshared_capacity);

  py::class_<Scenario>(m, "Scenario")
      .def_static("from_json",
                  [](const std::string& s) { return scenario_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const Scenario& s) { return to_json(s).dump(); })
      .def_property_readonly("durations", [](const Scenario& s) { return s.durations; });

  py::class_<FirstStageSolution>(m, "Solution")
      .def_static("from_json",
                  [](const std::string& s) { return solution_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const FirstStageSolution& s) { return to_json(s).dump(); })
      .def_property_readonly("open_room_days", &FirstStageSolution::open_room_days);

  m.def(
      "generate_instance",
      [](int weeks, int specialties, std::uint64_t seed, int patients_per_week,
         bool preset_beds) {
        GeneratorConfig cfg;
        cfg.weeks = weeks;
        cfg.n_specialties = specialties;
        cfg.seed = seed;
        cfg.patients_per_week = patients_per_week;
        if (preset_beds) cfg.bed_rule.kind = BedRule::Kind::Preset;
        return generate(cfg);
      },
      py::arg("weeks") = 2, py::arg("specialties") = 4, py::arg("seed") = 0,
      py::arg("patients_per_week") = 60, py::arg("preset_beds") = false);

  m.def(
      "sample_bundle",
      [](const Instance& inst, int count, std::uint64_t seed) {
        SamplerConfig cfg;
        cfg.seed = seed;
        return ScenarioSampler(inst, cfg).sample_bundle(count);
      },
      py::arg("instance"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "evaluate",
      [](const Instance& inst, const FirstStageSolution& sol, const Scenario& sc,
         std::uint64_t order_seed) {
        auto out = evaluate(inst, sol, sc, order_seed);
        return out.recourse_cost;
      },
      py::arg("instance"), py::arg("solution"), py::arg("scenario"), py::arg("order_seed") = 0,
      "Optimal second-stage (recourse) cost for a fixed first stage");

  m.def("first_stage_cost", [](const Instance& inst, const FirstStageSolution& sol) {
    return first_stage_cost(inst, sol);
  });

  m.def("validate", [](const Instance& inst, const FirstStageSolution& sol) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : validate(inst, sol)) out.push_back({v.tag, v.message});
    return out;
  });

  m.def(
      "solve_extensive",
      [](const Instance& inst, const std::vector<Scenario>& bundle, double rel_gap,
         double time_limit) {
        milp::SolveOutcome out;
        {
          py::gil_scoped_release release;
          auto em = milp::build_extensive(inst, bundle);
          auto backend = milp::make_backend();
          out = milp::solve(inst, em, *backend, limits(rel_gap, time_limit));
        }
        if (out.status == milp::SolveStatus::Infeasible)
          throw std::runtime_error("extensive form infeasible");
        return py::make_tuple(out.solution, out.objective);
      },
      py::arg("instance"), py::arg("scenarios"), py::arg("rel_gap") = 1e-4,
      py::arg("time_limit") = 3600.0);

  m.def(
      "run_saa",
      [](const Instance& inst, int n, int m_iter, int p, std::uint64_t seed, int jobs,
         double rel_gap, double time_limit, bool vss) {
        SaaConfig cfg;
        cfg.n_lb = n;
        cfg.m_iter = m_iter;
        cfg.p_ub = p;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.limits = limits(rel_gap, time_limit);
        SaaDriver driver(inst, cfg);
        SaaReport rep;
        {
          py::gil_scoped_release release;
          rep = driver.run();
          if (vss) driver.compute_vss(rep);
        }
        return to_json(rep).dump();
      },
      py::arg("instance"), py::arg("n") = 10, py::arg("m") = 5, py::arg("p") = 1000,
      py::arg("seed") = 0, py::arg("jobs") = 1, py::arg("rel_gap") = 1e-4,
      py::arg("time_limit") = 3600.0, py::arg("vss") = true,
      "SAA lower/upper bounds, gap and VSS as a JSON report string");

  m.def(
      "compare_policies",
      [](const Instance& inst, const std::vector<Scenario>& bundle,
         const std::vector<double>& alphas, double rel_gap, int jobs) {
        PolicyComparison cmp;
        {
          py::gil_scoped_release release;
          cmp = compare_policies(inst, bundle, to_policies(alphas), limits(rel_gap, 3600), jobs);
        }
        return policy_csv(cmp);
      },
      py::arg("instance"), py::arg("scenarios"), py::arg("alphas"),
      py::arg("rel_gap") = 1e-4, py::arg("jobs") = 1,
      "Policy comparison over a common bundle, as Table-2-shaped CSV");

  m.def(
      "sensitivity_sweep",
      [](const Instance& inst, const std::vector<Scenario>& bundle, const std::string& param,
         const std::vector<double>& multipliers, double rel_gap, int jobs) {
        std::vector<SensitivityRow> rows;
        {
          py::gil_scoped_release release;
          rows = sensitivity_sweep(inst, bundle, sens_param_from_string(param), multipliers,
                                   limits(rel_gap, 3600), jobs);
        }
        return sensitivity_csv(rows);
      },
      py::arg("instance"), py::arg("scenarios"), py::arg("param"), py::arg("multipliers"),
      py::arg("rel_gap") = 1e-4, py::arg("jobs") = 1);

  m.def("occupancy_series",
        [](const Instance& inst, const FirstStageSolution& sol,
           const std::vector<Scenario>& bundle) {
          return series_csv(occupancy_series(inst, sol, bundle));
        });
}
