#pragma once

#include <nlohmann/json.hpp>

#include "rule9/kinematics.hpp"
#include "rule9/situation.hpp"

// JSON records for snapshots, assessment parameters and verdicts. Keys
// are fixed; readers reject unknown keys.
namespace rule9::records {

/// {"north", "east", "sog" (m/s), "cog" (deg), "t" (s)}
nlohmann::json to_json(const VesselState& s);
VesselState vessel_from_json(const nlohmann::json& j);

/// Vessel keys plus "length", "breadth", "draught", "nav_status",
/// "vessel_type", "sub_type", "has_transponder".
nlohmann::json to_json(const TargetAttributes& t);
TargetAttributes target_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AssessmentConfig& c);
AssessmentConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ManeuverAssessment& m);
nlohmann::json to_json(const SituationAssessment& a);

}  // namespace rule9::records
