#include "orpool/milp/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace orpool::milp {

namespace {

struct Option {
  bool postpone = false;
  Slot slot;
};

// Mean surge cost in downstream h for a fixed bed split, using the
// conservation identity: total surge per day is the total overflow past
// non-shared beds minus what the shared pool absorbs.
double surge_cost_for_split(const Instance& inst, int h,
                            const std::vector<std::vector<int>>& occ_by_scenario_day,
                            const std::vector<int>& u_h) {
  const int S = inst.num_specialties();
  const int D = inst.horizon_days;
  const int cap = inst.shared_capacity(h);
  double total = 0;
  for (const auto& occ : occ_by_scenario_day) {  // occ is s * D + d
    for (int d = 0; d < D; ++d) {
      int overflow = 0;
      for (int s = 0; s < S; ++s)
        overflow += std::max(occ[static_cast<size_t>(s) * D + d] - u_h[s], 0);
      total += std::max(overflow - cap, 0);
    }
  }
  return inst.surge_cost[h] * total / occ_by_scenario_day.size();
}

}  // namespace

BruteForceResult brute_force(const Instance& inst, const std::vector<Scenario>& scenarios,
                             double max_space) {
  const int S = inst.num_specialties();
  const int R = inst.rooms;
  const int D = inst.horizon_days;
  const int n_pat = inst.num_patients();
  if (scenarios.empty()) throw std::invalid_argument("need at least one scenario");

  std::vector<std::vector<Option>> options(n_pat);
  double space = 1;
  for (int i = 0; i < n_pat; ++i) {
    const Patient& p = inst.patients[i];
    if (!inst.mandatory(p)) options[i].push_back({true, {}});
    for (int d = p.earliest_day; d <= inst.last_operable_day(p); ++d)
      for (int r : p.eligible_rooms) options[i].push_back({false, {r, d}});
    space *= std::max<size_t>(options[i].size(), 1);
    if (space > max_space) throw SpaceTooLarge("assignment space exceeds the enumeration cap");
  }

  const double workload_cap = inst.regular_time + inst.max_overtime;

  BruteForceResult best;
  best.objective = std::numeric_limits<double>::infinity();

  std::vector<std::optional<Slot>> assignment(n_pat);
  std::vector<int> block_spec(static_cast<size_t>(R) * D, -1);
  std::vector<int> block_owner_count(static_cast<size_t>(R) * D, 0);
  std::vector<double> block_tmax(static_cast<size_t>(R) * D, 0.0);

  auto evaluate_leaf = [&]() {
    // Block counts and forced extra openings for the lower block bounds.
    std::vector<int> count(S, 0);
    int used = 0;
    for (size_t b = 0; b < block_spec.size(); ++b)
      if (block_spec[b] >= 0) {
        ++count[block_spec[b]];
        ++used;
      }
    int extra = 0;
    for (int s = 0; s < S; ++s) {
      if (count[s] > inst.block_bounds[s].second) return;
      extra += std::max(inst.block_bounds[s].first - count[s], 0);
    }
    if (extra > R * D - used) return;

    double cost = inst.or_open_cost * (used + extra);
    for (int i = 0; i < n_pat; ++i) {
      const Patient& p = inst.patients[i];
      if (assignment[i])
        cost += p.waiting_cost_rate * (assignment[i]->day - p.earliest_day);
      else
        cost += p.postpone_cost;
    }

    // Mean overtime over scenarios.
    double ot_minutes = 0;
    for (const Scenario& sc : scenarios) {
      std::vector<double> load(static_cast<size_t>(R) * D, 0.0);
      for (int i = 0; i < n_pat; ++i)
        if (assignment[i])
          load[static_cast<size_t>(assignment[i]->room) * D + assignment[i]->day] +=
              sc.durations[i];
      for (double l : load) ot_minutes += std::max(l - inst.regular_time, 0.0);
    }
    cost += inst.overtime_cost_rate * ot_minutes / scenarios.size();
    if (cost >= best.objective) return;  // surge can only add

    // Occupancy per scenario, then the best bed split per downstream.
    std::vector<PerDownstream<int>> split(S, {0, 0});
    for (int h = 0; h < kDownstreams; ++h) {
      std::vector<std::vector<int>> occ(scenarios.size(),
                                        std::vector<int>(static_cast<size_t>(S) * D, 0));
      for (size_t n = 0; n < scenarios.size(); ++n) {
        const Scenario& sc = scenarios[n];
        for (int s = 0; s < S; ++s)
          for (int d = 0; d < D; ++d)
            occ[n][static_cast<size_t>(s) * D + d] = sc.carryover_at(s, h, d, D);
        for (int i = 0; i < n_pat; ++i) {
          if (!assignment[i]) continue;
          int start = assignment[i]->day;
          for (int hp = 0; hp < h; ++hp) start += sc.los[i][hp];
          int end = start + sc.los[i][h];
          int s = inst.patients[i].specialty;
          for (int d = start; d < end && d < D; ++d)
            occ[n][static_cast<size_t>(s) * D + d] += 1;
        }
      }
      // All splits summing to the full non-shared budget (padding is free,
      // so an optimum of that form always exists).
      const int budget = inst.nonshared_capacity(h);
      std::vector<int> u_h(S, 0);
      std::vector<int> best_u(S, 0);
      double best_cost = std::numeric_limits<double>::infinity();
      std::function<void(int, int)> rec = [&](int s, int left) {
        if (s == S - 1) {
          u_h[s] = left;
          double c = surge_cost_for_split(inst, h, occ, u_h);
          if (c < best_cost) {
            best_cost = c;
            best_u = u_h;
          }
          return;
        }
        for (int take = 0; take <= left; ++take) {
          u_h[s] = take;
          rec(s + 1, left - take);
        }
      };
      rec(0, budget);
      cost += best_cost;
      if (cost >= best.objective) return;
      for (int s = 0; s < S; ++s) split[s][h] = best_u[s];
    }

    best.objective = cost;
    best.feasible = true;
    best.solution.assignment = assignment;
    best.solution.bed_split = split;
    best.solution.block_specialty.assign(R, std::vector<int>(D, -1));
    for (int r = 0; r < R; ++r)
      for (int d = 0; d < D; ++d)
        best.solution.block_specialty[r][d] = block_spec[static_cast<size_t>(r) * D + d];
    // Open the forced extra blocks on the first closed slots.
    for (int s = 0; s < S; ++s) {
      int need = std::max(inst.block_bounds[s].first - count[s], 0);
      for (int r = 0; r < R && need > 0; ++r)
        for (int d = 0; d < D && need > 0; ++d)
          if (best.solution.block_specialty[r][d] < 0) {
            best.solution.block_specialty[r][d] = s;
            --need;
          }
    }
  };

  std::function<void(int)> dfs = [&](int i) {
    if (i == n_pat) {
      evaluate_leaf();
      return;
    }
    const Patient& p = inst.patients[i];
    for (const Option& opt : options[i]) {
      if (opt.postpone) {
        assignment[i] = std::nullopt;
        dfs(i + 1);
        continue;
      }
      const size_t b = static_cast<size_t>(opt.slot.room) * D + opt.slot.day;
      if (block_spec[b] >= 0 && block_spec[b] != p.specialty) continue;
      if (block_tmax[b] + p.max_duration > workload_cap + 1e-9) continue;
      const int prev_spec = block_spec[b];
      block_spec[b] = p.specialty;
      ++block_owner_count[b];
      block_tmax[b] += p.max_duration;
      assignment[i] = opt.slot;
      dfs(i + 1);
      assignment[i] = std::nullopt;
      block_tmax[b] -= p.max_duration;
      if (--block_owner_count[b] == 0)
        block_spec[b] = -1;
      else
        block_spec[b] = prev_spec;
    }
  };
  dfs(0);
  return best;
}

}  // namespace orpool::milp
