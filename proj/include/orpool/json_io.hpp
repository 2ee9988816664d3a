#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "orpool/types.hpp"

namespace orpool {

// Versioned JSON schema; field names follow the model symbols
// (earliest_day, latest_day, bed_stock, shared_fraction, ...).
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FirstStageSolution& sol);
FirstStageSolution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

// Scenario bundles as JSON lines, one scenario per line.
void write_scenario_bundle(std::ostream& os, const std::vector<Scenario>& bundle);
std::vector<Scenario> read_scenario_bundle(std::istream& is);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);
void save_bundle(const std::vector<Scenario>& bundle, const std::string& path);
std::vector<Scenario> load_bundle(const std::string& path);

}  // namespace orpool
