#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rule9/automaton.hpp"
#include "rule9/chart.hpp"
#include "rule9/kinematics.hpp"
#include "rule9/maneuver.hpp"

namespace rule9 {

/// What ownship knows about a target vessel. Dimensions come from AIS or
/// visual estimation; nav status only from a transponder.
struct TargetAttributes {
  VesselState state;
  std::optional<double> length;
  std::optional<double> breadth;
  std::optional<double> draught;
  std::optional<std::string> nav_status;
  std::string vessel_type = "vessel";
  std::optional<std::string> sub_type;
  bool has_transponder = false;

  void validate() const;
};

enum class EncounterKind { HeadOn, CrossingPort, CrossingStarboard, OvertakingOwn, OvertakenByTarget };

std::string_view to_string(EncounterKind k);
EncounterKind parse_encounter_kind(std::string_view s);

struct Encounter {
  EncounterKind kind;
  double relative_bearing;  // degrees clockwise from own heading, [0, 360)
};

enum class Duty { GiveWay, StandOn };

std::string_view to_string(Duty d);
constexpr Duty opposite(Duty d) { return d == Duty::GiveWay ? Duty::StandOn : Duty::GiveWay; }

/// Bearing of the target relative to ownship's course.
double relative_bearing(const VesselState& own, const VesselState& target);

/// Sector classifier (6 deg head-on cone, 112.5 deg abaft-the-beam limit).
Encounter classify_encounter(const VesselState& own, const VesselState& target);

Duty initial_duty(EncounterKind kind);
Duty initial_duty_target(EncounterKind kind);

/// d2 when the broadcast status reports restricted manoeuvrability (or,
/// with `include_draught`, constrained by draught).
AssessmentEvent event_d2(const TargetAttributes& target, bool include_draught = true);

struct AssessmentConfig {
  /// Pinned unscaled swing rate (deg/m); looked up by length when unset.
  std::optional<double> swing_rate;
  double alpha = 0.4;
  double cpa_req = 150.0;
  double tcpa_act = 180.0;
  ShipDomainSpec domain;
  ManeuverParams maneuver;
  double ukc_fraction = kDefaultUkcFraction;
  bool d2_includes_draught = true;
  /// Lookup table for unpinned swing rates; empty means the built-in table.
  std::vector<TurningCircleRecord> turning_circles;

  void validate() const;
};

struct SituationAssessment {
  Encounter encounter;
  Duty initial_duty_own;
  Duty final_duty_own;
  Duty initial_duty_target;
  Duty final_duty_target;
  bool rule9_applied = false;
  std::vector<std::string> events;
  std::vector<std::string> trace;  // states entered from D1 on; self-loops are not repeated
  std::optional<ManeuverAssessment> maneuver;
  std::optional<double> required_depth;
  double timestamp = 0.0;
};

/// Runs the classifier, the d1/d2/d3 event chain and a fresh assessment
/// automaton for one own/target snapshot.
SituationAssessment assess(const VesselState& own, const TargetAttributes& target, const SeaChart& chart,
                           const AssessmentConfig& config);

}  // namespace rule9
