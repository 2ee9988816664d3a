#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orpool {

// Downstream units a patient passes through after surgery, in order.
inline constexpr int kIcu = 0;
inline constexpr int kWard = 1;
inline constexpr int kDownstreams = 2;

template <typename T>
using PerDownstream = std::array<T, kDownstreams>;

struct SpecialtyProfile {
  int id = 0;
  std::string name;
  double mean_duration = 0;   // minutes
  double sd_duration = 0;     // minutes
  double mean_los_ward = 0;   // days
  double mean_los_icu = 0;    // days
  double sd_los = 0;          // days, applies to the total LOS draw

  double mean_los_total() const { return mean_los_ward + mean_los_icu; }
};

struct Patient {
  int id = 0;
  int specialty = 0;
  int earliest_day = 0;          // 0-based day index
  int latest_day = 0;            // may exceed the horizon (optional patient)
  int priority = 1;              // 1..5
  double mean_duration = 0;      // minutes
  double max_duration = 0;       // minutes, upper bound on any realization
  double mean_los_total = 0;     // days
  double sd_los = 0;             // days
  double waiting_cost_rate = 0;  // currency per day past earliest_day
  double postpone_cost = 0;      // currency
  std::vector<int> eligible_rooms;

  bool eligible_room(int r) const {
    for (int er : eligible_rooms)
      if (er == r) return true;
    return false;
  }
};

struct Instance {
  int horizon_days = 0;
  int rooms = 0;
  std::vector<SpecialtyProfile> specialties;
  std::vector<Patient> patients;
  double regular_time = 480;      // minutes per open room per day
  double max_overtime = 180;      // minutes per open room per day
  PerDownstream<int> bed_stock{}; // total beds M_h
  PerDownstream<double> shared_fraction{};
  double or_open_cost = 0;
  double overtime_cost_rate = 0;           // currency per minute
  PerDownstream<double> surge_cost{};      // currency per patient-day
  std::vector<std::pair<int, int>> block_bounds;  // per specialty (min, max)

  int num_specialties() const { return static_cast<int>(specialties.size()); }
  int num_patients() const { return static_cast<int>(patients.size()); }

  bool mandatory(const Patient& p) const {
    return p.latest_day <= horizon_days - 1;
  }
  // Last day the surgery may actually be performed.
  int last_operable_day(const Patient& p) const {
    return std::min(p.latest_day, horizon_days - 1);
  }
  int shared_capacity(int h) const {
    return static_cast<int>(std::floor(shared_fraction[h] * bed_stock[h] + 1e-9));
  }
  int nonshared_capacity(int h) const {
    return static_cast<int>(std::ceil((1.0 - shared_fraction[h]) * bed_stock[h] - 1e-9));
  }
};

struct Scenario {
  std::vector<double> durations;              // per patient, minutes
  std::vector<double> los_total_raw;          // per patient, pre-rounding total LOS
  std::vector<PerDownstream<int>> los;        // per patient, integer days per downstream
  // Carried-over occupancy b_shd, flattened (s * H + h) * D + d. Empty means zero.
  std::vector<int> carryover;

  int carryover_at(int s, int h, int d, int horizon) const {
    if (carryover.empty()) return 0;
    return carryover[(static_cast<size_t>(s) * kDownstreams + h) * horizon + d];
  }
};

// (room, day) slot of a scheduled surgery.
struct Slot {
  int room = 0;
  int day = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct FirstStageSolution {
  // One entry per patient; nullopt = postponed.
  std::vector<std::optional<Slot>> assignment;
  // u_sh: non-shared beds per (specialty, downstream).
  std::vector<PerDownstream<int>> bed_split;
  // Explicit block map z_srd; -1 = closed. room_open is implied (!= -1).
  std::vector<std::vector<int>> block_specialty;  // [room][day]

  bool room_open(int r, int d) const { return block_specialty[r][d] >= 0; }
  int open_room_days() const {
    int n = 0;
    for (const auto& row : block_specialty)
      for (int s : row) n += (s >= 0);
    return n;
  }
};

struct SecondStageOutcome {
  // Flattened (s * H + h) * D + d tables.
  std::vector<int> shared_used;  // q
  std::vector<int> surge_used;   // v
  std::vector<double> overtime;  // per (room, day), minutes, r * D + d
  double recourse_cost = 0;
};

struct CostBreakdown {
  double waiting = 0;
  double postponement = 0;
  double or_fixed = 0;
  double overtime = 0;
  double surge = 0;

  double total() const { return waiting + postponement + or_fixed + overtime + surge; }
  CostBreakdown& operator+=(const CostBreakdown& o) {
    waiting += o.waiting;
    postponement += o.postponement;
    or_fixed += o.or_fixed;
    overtime += o.overtime;
    surge += o.surge;
    return *this;
  }
};

}  // namespace orpool
