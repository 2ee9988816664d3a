#include "orpool/milp/model.hpp"

#include <cmath>
#include <ostream>

namespace orpool::milp {

std::map<std::string, int> MilpModel::row_count_by_tag() const {
  std::map<std::string, int> counts;
  for (const Row& r : rows_) ++counts[r.tag];
  return counts;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double obj = 0;
  for (size_t j = 0; j < vars_.size(); ++j) obj += vars_[j].obj * x[j];
  return obj;
}

void MilpModel::write_lp(std::ostream& os) const {
  os << "Minimize\n obj:";
  for (size_t j = 0; j < vars_.size(); ++j)
    if (vars_[j].obj != 0) os << " + " << vars_[j].obj << " x" << j;
  os << "\nSubject To\n";
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    auto body = [&] {
      for (auto [j, a] : r.coeffs) os << (a >= 0 ? " + " : " - ") << std::abs(a) << " x" << j;
    };
    if (r.lo == r.hi) {
      os << " c" << i << ":";
      body();
      os << " = " << r.lo << "\n";
    } else {
      if (r.hi != kInf) {
        os << " c" << i << "u:";
        body();
        os << " <= " << r.hi << "\n";
      }
      if (r.lo != -kInf) {
        os << " c" << i << "l:";
        body();
        os << " >= " << r.lo << "\n";
      }
    }
  }
  os << "Bounds\n";
  for (size_t j = 0; j < vars_.size(); ++j) {
    os << " ";
    if (vars_[j].lb == -kInf)
      os << "-inf";
    else
      os << vars_[j].lb;
    os << " <= x" << j << " <= ";
    if (vars_[j].ub == kInf)
      os << "+inf";
    else
      os << vars_[j].ub;
    os << "\n";
  }
  bool any_int = false;
  for (const auto& v : vars_) any_int |= v.type != VarType::Continuous;
  if (any_int) {
    os << "General\n";
    for (size_t j = 0; j < vars_.size(); ++j)
      if (vars_[j].type != VarType::Continuous) os << " x" << j;
    os << "\n";
  }
  os << "End\n";
}

}  // namespace orpool::milp
