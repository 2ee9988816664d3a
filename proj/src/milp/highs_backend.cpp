#include <Highs.h>

#include <cstdlib>

#include "orpool/milp/backend.hpp"

namespace orpool::milp {

namespace {

class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }

  SolveResult solve(const MilpModel& model, const SolverLimits& limits) override {
    HighsLp lp;
    lp.num_col_ = model.num_vars();
    lp.num_row_ = model.num_rows();
    lp.sense_ = ObjSense::kMinimize;

    bool any_integer = false;
    lp.integrality_.resize(lp.num_col_, HighsVarType::kContinuous);
    for (int j = 0; j < lp.num_col_; ++j) {
      const Variable& v = model.vars()[j];
      lp.col_cost_.push_back(v.obj);
      lp.col_lower_.push_back(v.lb);
      lp.col_upper_.push_back(v.ub);
      if (v.type != VarType::Continuous) {
        lp.integrality_[j] = HighsVarType::kInteger;
        any_integer = true;
      }
    }
    if (!any_integer) lp.integrality_.clear();

    lp.a_matrix_.format_ = MatrixFormat::kRowwise;
    lp.a_matrix_.start_.assign(1, 0);  // the default-constructed matrix already holds {0}
    for (const Row& r : model.rows()) {
      for (auto [j, a] : r.coeffs) {
        lp.a_matrix_.index_.push_back(j);
        lp.a_matrix_.value_.push_back(a);
      }
      lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
      lp.row_lower_.push_back(r.lo);
      lp.row_upper_.push_back(r.hi);
    }

    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("threads", limits.threads);
    highs.setOptionValue("mip_rel_gap", limits.rel_gap);
    highs.setOptionValue("time_limit", limits.time_limit_s);
    highs.setOptionValue("random_seed", 0);
    if (highs.passModel(lp) != HighsStatus::kOk)
      throw std::runtime_error("highs: model rejected");
    highs.run();

    SolveResult res;
    const HighsModelStatus status = highs.getModelStatus();
    const bool has_solution = highs.getSolution().value_valid;
    switch (status) {
      case HighsModelStatus::kOptimal:
        res.status = SolveStatus::Optimal;
        break;
      case HighsModelStatus::kInfeasible:
        res.status = SolveStatus::Infeasible;
        return res;
      case HighsModelStatus::kTimeLimit:
        res.status = SolveStatus::TimeLimit;
        break;
      default:
        if (!has_solution) throw std::runtime_error("highs: unexpected model status");
        res.status = SolveStatus::FeasibleWithGap;
        break;
    }
    if (has_solution) {
      res.values = highs.getSolution().col_value;
      res.objective = highs.getInfo().objective_function_value;
    }
    res.bound = any_integer ? highs.getInfo().mip_dual_bound : res.objective;
    return res;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_backend(const std::string& which) {
  std::string name = which;
  if (name.empty()) {
    const char* env = std::getenv("ORPOOL_SOLVER");
    name = env ? env : "highs";
  }
  if (name == "highs") return std::make_unique<HighsBackend>();
  throw BackendUnavailable("unknown solver backend: " + name);
}

}  // namespace orpool::milp
