#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "capflp/analysis.hpp"
#include "capflp/distribution.hpp"
#include "capflp/fcfs.hpp"
#include "capflp/instance.hpp"
#include "capflp/mechanisms.hpp"
#include "capflp/planar.hpp"

namespace capflp {

using json = nlohmann::json;

// Throws IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

// Array of numbers.
json to_json(const Instance& instance);
Instance instance_from_json(const json& j);
// CSV with a `position` header, one value per row.
std::string instance_to_csv(const Instance& instance);
Instance instance_from_csv(const std::string& text);
// JSON or CSV, decided by the first non-blank character.
Instance parse_instance_text(const std::string& text);

// {"kind": "uniform" | "triangular" | "beta" | "mixture", ...}
json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const json& j);
// Accepts JSON or the bare kind names "uniform" / "triangular".
DistributionSpec parse_distribution(const std::string& text);

// 1-based facility indices.
json to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const json& j);

// agent,position,strategy,served,utility (agents and strategies 1-based).
void write_outcome_csv(std::ostream& out, std::span<const double> positions, const StrategyProfile& profile,
                       const ServiceOutcome& outcome);

// {"v": [...], "assignment": [...]}; a bare array is read as entries with identity assignment.
json to_json(const PercentileVector& v);
PercentileVector percentile_from_json(const json& j);

// "2,2" or "[2,2]".
CapacityVector parse_capacities(const std::string& text);

json to_json(const BestVectorReport& report);
// {ratio, case, num, den}, plus "approximate": true when set.
json to_json(const RatioFormulaResult& r);
json to_json(const WorstCaseInstance& w);

json to_json(const Placement& placement);
Placement placement_from_json(const json& j);

// Array of [x, y] pairs.
json to_json(const PlanarInstance& instance);
PlanarInstance planar_instance_from_json(const json& j);
// {"rows": [[...], [...]]}
json to_json(const PercentileMatrix& V);
PercentileMatrix percentile_matrix_from_json(const json& j);

json to_json(const TruthfulnessWitness& w);

}  // namespace capflp
