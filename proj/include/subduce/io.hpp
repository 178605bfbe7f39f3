#pragma once

#include <json.hpp>
#include <string>

#include "subduce/hecke.hpp"
#include "subduce/solver.hpp"
#include "subduce/subduction.hpp"
#include "subduce/tableaux.hpp"

namespace subduce {

/// Rounds to the given number of significant digits. Output values all
/// go through this so repeated runs serialize identically.
double round_significant(double x, int digits = 12);
std::string format_significant(double x, int digits = 12);

std::string to_string(SystemMode mode);
SystemMode mode_from_string(const std::string& text);

nlohmann::json to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StandardTableau& m);
StandardTableau tableau_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SkewFilling& t);
SkewFilling skew_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SDCSolution& solution);
SDCSolution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const HeckeRelationReport& report);
nlohmann::json to_json(const OracleReport& report);

/// One-line canonical JSON text of a solution, trailing newline included.
std::string canonical_solution_json(const SDCSolution& solution);

}  // namespace subduce
