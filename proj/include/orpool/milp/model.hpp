#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace orpool::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType { Continuous, Binary, Integer };

struct Variable {
  double lb = 0;
  double ub = kInf;
  double obj = 0;
  VarType type = VarType::Continuous;
};

// One linear row lo <= a'x <= hi, tagged with its constraint family
// ("(2)".."(7)", "(14)".."(17)", "guard").
struct Row {
  std::vector<std::pair<int, double>> coeffs;
  double lo = -kInf;
  double hi = kInf;
  std::string tag;
};

class MilpModel {
 public:
  int add_var(double lb, double ub, double obj, VarType type) {
    vars_.push_back({lb, ub, obj, type});
    return static_cast<int>(vars_.size()) - 1;
  }
  void add_row(std::vector<std::pair<int, double>> coeffs, double lo, double hi,
               std::string tag) {
    rows_.push_back({std::move(coeffs), lo, hi, std::move(tag)});
  }

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<Row>& mutable_rows() { return rows_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  std::map<std::string, int> row_count_by_tag() const;

  // Objective value of a candidate point (minimization sense).
  double objective_value(const std::vector<double>& x) const;

  // CPLEX LP text format, for backend-neutral inspection.
  void write_lp(std::ostream& os) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

}  // namespace orpool::milp
