#include "orpool/milp/build.hpp"

#include <cmath>
#include <stdexcept>

#include "orpool/evaluator.hpp"
#include "orpool/validate.hpp"

namespace orpool::milp {

namespace {

int table_index(int s, int h, int d, int days) {
  return (s * kDownstreams + h) * days + d;
}

}  // namespace

int ExtensiveModel::q_col(int n, int s, int h, int d) const {
  const int shd = spec_count * kDownstreams * day_count;
  const int stride = 2 * shd + room_count * day_count;
  return stage2_offset + n * stride + table_index(s, h, d, day_count);
}

int ExtensiveModel::v_col(int n, int s, int h, int d) const {
  const int shd = spec_count * kDownstreams * day_count;
  const int stride = 2 * shd + room_count * day_count;
  return stage2_offset + n * stride + shd + table_index(s, h, d, day_count);
}

int ExtensiveModel::o_col(int n, int r, int d) const {
  const int shd = spec_count * kDownstreams * day_count;
  const int stride = 2 * shd + room_count * day_count;
  return stage2_offset + n * stride + 2 * shd + r * day_count + d;
}

ExtensiveModel build_extensive(const Instance& inst, const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("need at least one scenario");
  const int S = inst.num_specialties();
  const int R = inst.rooms;
  const int D = inst.horizon_days;
  const int N = static_cast<int>(scenarios.size());
  const double inv_n = 1.0 / N;

  ExtensiveModel em;
  em.n_scenarios = N;
  em.spec_count = S;
  em.room_count = R;
  em.day_count = D;
  MilpModel& m = em.model;

  // First-stage columns.
  for (int i = 0; i < inst.num_patients(); ++i) {
    const Patient& p = inst.patients[i];
    for (int d = p.earliest_day; d <= inst.last_operable_day(p); ++d)
      for (int r : p.eligible_rooms) {
        double waiting = p.waiting_cost_rate * (d - p.earliest_day);
        em.x.push_back({i, r, d, m.add_var(0, 1, waiting, VarType::Binary)});
      }
  }
  em.xprime.assign(inst.num_patients(), -1);
  for (int i = 0; i < inst.num_patients(); ++i)
    if (!inst.mandatory(inst.patients[i]))
      em.xprime[i] = m.add_var(0, 1, inst.patients[i].postpone_cost, VarType::Binary);

  em.y.assign(R, std::vector<int>(D));
  for (int r = 0; r < R; ++r)
    for (int d = 0; d < D; ++d) em.y[r][d] = m.add_var(0, 1, inst.or_open_cost, VarType::Binary);

  em.z.assign(S, std::vector<std::vector<int>>(R, std::vector<int>(D)));
  for (int s = 0; s < S; ++s)
    for (int r = 0; r < R; ++r)
      for (int d = 0; d < D; ++d) em.z[s][r][d] = m.add_var(0, 1, 0, VarType::Binary);

  em.u.resize(S);
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      em.u[s][h] = m.add_var(0, inst.nonshared_capacity(h), 0, VarType::Integer);

  // Second-stage columns, one block per scenario: q, v, then o.
  em.stage2_offset = m.num_vars();
  for (int n = 0; n < N; ++n) {
    for (int s = 0; s < S; ++s)
      for (int h = 0; h < kDownstreams; ++h)
        for (int d = 0; d < D; ++d) m.add_var(0, kInf, 0, VarType::Continuous);
    for (int s = 0; s < S; ++s)
      for (int h = 0; h < kDownstreams; ++h)
        for (int d = 0; d < D; ++d)
          m.add_var(0, kInf, inv_n * inst.surge_cost[h], VarType::Continuous);
    for (int r = 0; r < R; ++r)
      for (int d = 0; d < D; ++d)
        m.add_var(0, kInf, inv_n * inst.overtime_cost_rate, VarType::Continuous);
  }

  // Assignment rows.
  {
    std::vector<std::vector<std::pair<int, double>>> per_patient(inst.num_patients());
    for (const auto& xv : em.x) per_patient[xv.patient].push_back({xv.col, 1.0});
    for (int i = 0; i < inst.num_patients(); ++i) {
      auto coeffs = per_patient[i];
      if (em.xprime[i] < 0) {
        m.add_row(std::move(coeffs), 1, 1, "(2)");
      } else {
        coeffs.push_back({em.xprime[i], 1.0});
        m.add_row(std::move(coeffs), 1, 1, "(3)");
      }
    }
  }

  // Block logic.
  for (int r = 0; r < R; ++r)
    for (int d = 0; d < D; ++d) {
      std::vector<std::pair<int, double>> coeffs;
      for (int s = 0; s < S; ++s) coeffs.push_back({em.z[s][r][d], 1.0});
      coeffs.push_back({em.y[r][d], -1.0});
      m.add_row(std::move(coeffs), 0, 0, "(4)");
    }
  for (const auto& xv : em.x) {
    int s = inst.patients[xv.patient].specialty;
    m.add_row({{xv.col, 1.0}, {em.z[s][xv.room][xv.day], -1.0}}, -kInf, 0, "(5)");
  }
  for (int s = 0; s < S; ++s) {
    std::vector<std::pair<int, double>> coeffs;
    for (int r = 0; r < R; ++r)
      for (int d = 0; d < D; ++d) coeffs.push_back({em.z[s][r][d], 1.0});
    auto [lo, hi] = inst.block_bounds[s];
    m.add_row(std::move(coeffs), lo, hi, "(6)");
  }

  // Non-shared bed budget.
  for (int h = 0; h < kDownstreams; ++h) {
    std::vector<std::pair<int, double>> coeffs;
    for (int s = 0; s < S; ++s) coeffs.push_back({em.u[s][h], 1.0});
    m.add_row(std::move(coeffs), -kInf, inst.nonshared_capacity(h), "(7)");
  }

  // Worst-case workload guard so any realization fits in A + O^max.
  {
    std::vector<std::vector<std::pair<int, double>>> per_block(static_cast<size_t>(R) * D);
    for (const auto& xv : em.x)
      per_block[static_cast<size_t>(xv.room) * D + xv.day].push_back(
          {xv.col, inst.patients[xv.patient].max_duration});
    for (auto& coeffs : per_block)
      m.add_row(std::move(coeffs), -kInf, inst.regular_time + inst.max_overtime, "guard");
  }

  // Scenario copies.
  for (int n = 0; n < N; ++n) {
    const Scenario& sc = scenarios[n];

    // Bed membership: x columns contributing to each (s, h, d) cell.
    std::vector<std::vector<std::pair<int, double>>> cell(static_cast<size_t>(S) *
                                                          kDownstreams * D);
    for (const auto& xv : em.x) {
      const int s = inst.patients[xv.patient].specialty;
      int start = xv.day;
      for (int h = 0; h < kDownstreams; ++h) {
        int end = start + sc.los[xv.patient][h];
        for (int d = start; d < end && d < D; ++d)
          cell[table_index(s, h, d, D)].push_back({xv.col, 1.0});
        start = end;
      }
    }
    for (int s = 0; s < S; ++s)
      for (int h = 0; h < kDownstreams; ++h)
        for (int d = 0; d < D; ++d) {
          auto coeffs = std::move(cell[table_index(s, h, d, D)]);
          coeffs.push_back({em.u[s][h], -1.0});
          coeffs.push_back({em.q_col(n, s, h, d), -1.0});
          coeffs.push_back({em.v_col(n, s, h, d), -1.0});
          m.add_row(std::move(coeffs), -kInf, -sc.carryover_at(s, h, d, D), "(14)");
        }

    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) {
        std::vector<std::pair<int, double>> coeffs;
        for (int s = 0; s < S; ++s) coeffs.push_back({em.q_col(n, s, h, d), 1.0});
        m.add_row(std::move(coeffs), -kInf, inst.shared_capacity(h), "(15)");
      }

    std::vector<std::vector<std::pair<int, double>>> per_block(static_cast<size_t>(R) * D);
    for (const auto& xv : em.x)
      per_block[static_cast<size_t>(xv.room) * D + xv.day].push_back(
          {xv.col, sc.durations[xv.patient]});
    for (int r = 0; r < R; ++r)
      for (int d = 0; d < D; ++d) {
        auto coeffs = std::move(per_block[static_cast<size_t>(r) * D + d]);
        coeffs.push_back({em.o_col(n, r, d), -1.0});
        m.add_row(std::move(coeffs), -kInf, inst.regular_time, "(16)");
        m.add_row({{em.o_col(n, r, d), 1.0}}, -kInf, inst.max_overtime, "(17)");
      }
  }

  return em;
}

Scenario mean_scenario(const Instance& inst, const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) throw std::invalid_argument("need at least one scenario");
  const int n_pat = inst.num_patients();
  const double inv_n = 1.0 / scenarios.size();
  Scenario mean;
  mean.durations.assign(n_pat, 0.0);
  mean.los_total_raw.assign(n_pat, 0.0);
  mean.los.assign(n_pat, {0, 0});
  std::vector<PerDownstream<double>> los_sum(n_pat, {0, 0});
  for (const Scenario& sc : scenarios)
    for (int i = 0; i < n_pat; ++i) {
      mean.durations[i] += inv_n * sc.durations[i];
      mean.los_total_raw[i] += inv_n * sc.los_total_raw[i];
      for (int h = 0; h < kDownstreams; ++h) los_sum[i][h] += inv_n * sc.los[i][h];
    }
  for (int i = 0; i < n_pat; ++i)
    for (int h = 0; h < kDownstreams; ++h)
      mean.los[i][h] = static_cast<int>(std::lround(los_sum[i][h]));

  bool any_carry = false;
  for (const Scenario& sc : scenarios) any_carry |= !sc.carryover.empty();
  if (any_carry) {
    const size_t cells =
        static_cast<size_t>(inst.num_specialties()) * kDownstreams * inst.horizon_days;
    std::vector<double> sum(cells, 0.0);
    for (const Scenario& sc : scenarios)
      for (size_t c = 0; c < cells; ++c)
        if (!sc.carryover.empty()) sum[c] += inv_n * sc.carryover[c];
    mean.carryover.resize(cells);
    for (size_t c = 0; c < cells; ++c)
      mean.carryover[c] = static_cast<int>(std::lround(sum[c]));
  }
  return mean;
}

ExtensiveModel build_evp(const Instance& inst, const std::vector<Scenario>& scenarios) {
  return build_extensive(inst, {mean_scenario(inst, scenarios)});
}

MilpModel build_second_stage_lp(const Instance& inst, const FirstStageSolution& sol,
                                const Scenario& scenario) {
  const int S = inst.num_specialties();
  const int R = inst.rooms;
  const int D = inst.horizon_days;
  MilpModel m;

  std::vector<int> q(static_cast<size_t>(S) * kDownstreams * D);
  std::vector<int> v(q.size());
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) q[table_index(s, h, d, D)] = m.add_var(0, kInf, 0, VarType::Continuous);
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d)
        v[table_index(s, h, d, D)] = m.add_var(0, kInf, inst.surge_cost[h], VarType::Continuous);
  std::vector<int> o(static_cast<size_t>(R) * D);
  for (int r = 0; r < R; ++r)
    for (int d = 0; d < D; ++d)
      o[r * D + d] = m.add_var(0, inst.max_overtime, inst.overtime_cost_rate, VarType::Continuous);

  // Membership computed directly from the stay condition on each day, kept
  // independent of the evaluator's occupancy accounting.
  std::vector<int> occupants(static_cast<size_t>(S) * kDownstreams * D, 0);
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d)
        occupants[table_index(s, h, d, D)] = scenario.carryover_at(s, h, d, D);
  for (int i = 0; i < inst.num_patients(); ++i) {
    if (!sol.assignment[i]) continue;
    const int dp = sol.assignment[i]->day;
    const int s = inst.patients[i].specialty;
    for (int h = 0; h < kDownstreams; ++h) {
      int before = 0, through = 0;
      for (int hp = 0; hp < h; ++hp) before += scenario.los[i][hp];
      through = before + scenario.los[i][h];
      for (int d = 0; d < D; ++d)
        if (dp + before <= d && dp + through > d) occupants[table_index(s, h, d, D)] += 1;
    }
  }
  for (int s = 0; s < S; ++s)
    for (int h = 0; h < kDownstreams; ++h)
      for (int d = 0; d < D; ++d) {
        int idx = table_index(s, h, d, D);
        double rhs = occupants[idx] - sol.bed_split[s][h];
        m.add_row({{q[idx], 1.0}, {v[idx], 1.0}}, rhs, kInf, "(14)");
      }
  for (int h = 0; h < kDownstreams; ++h)
    for (int d = 0; d < D; ++d) {
      std::vector<std::pair<int, double>> coeffs;
      for (int s = 0; s < S; ++s) coeffs.push_back({q[table_index(s, h, d, D)], 1.0});
      m.add_row(std::move(coeffs), -kInf, inst.shared_capacity(h), "(15)");
    }
  std::vector<double> load(static_cast<size_t>(R) * D, 0.0);
  for (int i = 0; i < inst.num_patients(); ++i)
    if (sol.assignment[i])
      load[static_cast<size_t>(sol.assignment[i]->room) * D + sol.assignment[i]->day] +=
          scenario.durations[i];
  for (int r = 0; r < R; ++r)
    for (int d = 0; d < D; ++d)
      m.add_row({{o[r * D + d], 1.0}}, load[r * D + d] - inst.regular_time, kInf, "(16)");
  return m;
}

FirstStageSolution extract_solution(const Instance& inst, const ExtensiveModel& em,
                                    const std::vector<double>& values) {
  FirstStageSolution sol;
  sol.assignment.assign(inst.num_patients(), std::nullopt);
  for (const auto& xv : em.x)
    if (values[xv.col] > 0.5) sol.assignment[xv.patient] = Slot{xv.room, xv.day};
  sol.block_specialty.assign(inst.rooms, std::vector<int>(inst.horizon_days, -1));
  for (int r = 0; r < inst.rooms; ++r)
    for (int d = 0; d < inst.horizon_days; ++d)
      if (values[em.y[r][d]] > 0.5)
        for (int s = 0; s < inst.num_specialties(); ++s)
          if (values[em.z[s][r][d]] > 0.5) sol.block_specialty[r][d] = s;
  sol.bed_split.resize(inst.num_specialties());
  for (int s = 0; s < inst.num_specialties(); ++s)
    for (int h = 0; h < kDownstreams; ++h)
      sol.bed_split[s][h] = static_cast<int>(std::lround(values[em.u[s][h]]));
  return sol;
}

SolveOutcome solve(const Instance& inst, const ExtensiveModel& em, SolverBackend& backend,
                   const SolverLimits& limits) {
  SolveResult res = backend.solve(em.model, limits);
  SolveOutcome out;
  out.status = res.status;
  out.objective = res.objective;
  out.bound = res.bound;
  if (res.status == SolveStatus::Infeasible || res.values.empty()) return out;
  out.solution = extract_solution(inst, em, res.values);
  require_valid(inst, out.solution);
  return out;
}

}  // namespace orpool::milp
