#include "orpool/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orpool {

using nlohmann::json;

namespace {

json specialty_to_json(const SpecialtyProfile& s) {
  return json{{"id", s.id},
              {"name", s.name},
              {"mean_duration", s.mean_duration},
              {"sd_duration", s.sd_duration},
              {"mean_los_ward", s.mean_los_ward},
              {"mean_los_icu", s.mean_los_icu},
              {"sd_los", s.sd_los}};
}

SpecialtyProfile specialty_from_json(const json& j) {
  SpecialtyProfile s;
  s.id = j.at("id");
  s.name = j.value("name", "");
  s.mean_duration = j.at("mean_duration");
  s.sd_duration = j.at("sd_duration");
  s.mean_los_ward = j.at("mean_los_ward");
  s.mean_los_icu = j.at("mean_los_icu");
  s.sd_los = j.at("sd_los");
  return s;
}

json patient_to_json(const Patient& p) {
  return json{{"id", p.id},
              {"specialty", p.specialty},
              {"earliest_day", p.earliest_day},
              {"latest_day", p.latest_day},
              {"priority", p.priority},
              {"mean_duration", p.mean_duration},
              {"max_duration", p.max_duration},
              {"mean_los_total", p.mean_los_total},
              {"sd_los", p.sd_los},
              {"waiting_cost_rate", p.waiting_cost_rate},
              {"postpone_cost", p.postpone_cost},
              {"eligible_rooms", p.eligible_rooms}};
}

Patient patient_from_json(const json& j) {
  Patient p;
  p.id = j.at("id");
  p.specialty = j.at("specialty");
  p.earliest_day = j.at("earliest_day");
  p.latest_day = j.at("latest_day");
  p.priority = j.at("priority");
  p.mean_duration = j.at("mean_duration");
  p.max_duration = j.at("max_duration");
  p.mean_los_total = j.at("mean_los_total");
  p.sd_los = j.at("sd_los");
  p.waiting_cost_rate = j.at("waiting_cost_rate");
  p.postpone_cost = j.at("postpone_cost");
  p.eligible_rooms = j.at("eligible_rooms").get<std::vector<int>>();
  return p;
}

}  // namespace

json to_json(const Instance& inst) {
  json specialties = json::array();
  for (const auto& s : inst.specialties) specialties.push_back(specialty_to_json(s));
  json patients = json::array();
  for (const auto& p : inst.patients) patients.push_back(patient_to_json(p));
  json bounds = json::array();
  for (auto [lo, hi] : inst.block_bounds) bounds.push_back(json{{"min", lo}, {"max", hi}});
  return json{{"schema_version", kSchemaVersion},
              {"horizon_days", inst.horizon_days},
              {"rooms", inst.rooms},
              {"regular_time", inst.regular_time},
              {"max_overtime", inst.max_overtime},
              {"bed_stock", {{"icu", inst.bed_stock[kIcu]}, {"ward", inst.bed_stock[kWard]}}},
              {"shared_fraction",
               {{"icu", inst.shared_fraction[kIcu]}, {"ward", inst.shared_fraction[kWard]}}},
              {"or_open_cost", inst.or_open_cost},
              {"overtime_cost_rate", inst.overtime_cost_rate},
              {"surge_cost", {{"icu", inst.surge_cost[kIcu]}, {"ward", inst.surge_cost[kWard]}}},
              {"block_bounds", bounds},
              {"specialties", specialties},
              {"patients", patients}};
}

Instance instance_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported instance schema version");
  Instance inst;
  inst.horizon_days = j.at("horizon_days");
  inst.rooms = j.at("rooms");
  inst.regular_time = j.at("regular_time");
  inst.max_overtime = j.at("max_overtime");
  inst.bed_stock[kIcu] = j.at("bed_stock").at("icu");
  inst.bed_stock[kWard] = j.at("bed_stock").at("ward");
  inst.shared_fraction[kIcu] = j.at("shared_fraction").at("icu");
  inst.shared_fraction[kWard] = j.at("shared_fraction").at("ward");
  inst.or_open_cost = j.at("or_open_cost");
  inst.overtime_cost_rate = j.at("overtime_cost_rate");
  inst.surge_cost[kIcu] = j.at("surge_cost").at("icu");
  inst.surge_cost[kWard] = j.at("surge_cost").at("ward");
  for (const auto& b : j.at("block_bounds"))
    inst.block_bounds.emplace_back(b.at("min").get<int>(), b.at("max").get<int>());
  for (const auto& s : j.at("specialties")) inst.specialties.push_back(specialty_from_json(s));
  for (const auto& p : j.at("patients")) inst.patients.push_back(patient_from_json(p));
  return inst;
}

json to_json(const FirstStageSolution& sol) {
  json assignment = json::array();
  for (const auto& slot : sol.assignment) {
    if (slot)
      assignment.push_back(json{{"room", slot->room}, {"day", slot->day}});
    else
      assignment.push_back(nullptr);
  }
  json split = json::array();
  for (const auto& u : sol.bed_split) split.push_back(json{{"icu", u[kIcu]}, {"ward", u[kWard]}});
  return json{{"schema_version", kSchemaVersion},
              {"assignment", assignment},
              {"bed_split", split},
              {"block_specialty", sol.block_specialty}};
}

FirstStageSolution solution_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kSchemaVersion)
    throw std::runtime_error("unsupported solution schema version");
  FirstStageSolution sol;
  for (const auto& a : j.at("assignment")) {
    if (a.is_null())
      sol.assignment.push_back(std::nullopt);
    else
      sol.assignment.push_back(Slot{a.at("room"), a.at("day")});
  }
  for (const auto& u : j.at("bed_split"))
    sol.bed_split.push_back({u.at("icu").get<int>(), u.at("ward").get<int>()});
  sol.block_specialty = j.at("block_specialty").get<std::vector<std::vector<int>>>();
  return sol;
}

json to_json(const Scenario& sc) {
  json los = json::array();
  for (const auto& l : sc.los) los.push_back(json::array({l[kIcu], l[kWard]}));
  json j{{"durations", sc.durations}, {"los_total_raw", sc.los_total_raw}, {"los", los}};
  if (!sc.carryover.empty()) j["carryover"] = sc.carryover;
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.durations = j.at("durations").get<std::vector<double>>();
  sc.los_total_raw = j.at("los_total_raw").get<std::vector<double>>();
  for (const auto& l : j.at("los")) sc.los.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  if (j.contains("carryover")) sc.carryover = j.at("carryover").get<std::vector<int>>();
  return sc;
}

void write_scenario_bundle(std::ostream& os, const std::vector<Scenario>& bundle) {
  for (const auto& sc : bundle) os << to_json(sc).dump() << '\n';
}

std::vector<Scenario> read_scenario_bundle(std::istream& is) {
  std::vector<Scenario> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(scenario_from_json(json::parse(line)));
  }
  return out;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << to_json(inst).dump(2) << '\n';
}

Instance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return instance_from_json(json::parse(is));
}

void save_bundle(const std::vector<Scenario>& bundle, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_scenario_bundle(os, bundle);
}

std::vector<Scenario> load_bundle(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_scenario_bundle(is);
}

}  // namespace orpool
