#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rule9/chart.hpp"
#include "rule9/geo.hpp"
#include "rule9/kinematics.hpp"

namespace rule9 {

/// One hard-over turning-circle trial.
struct TurningCircleRecord {
  std::string vessel_type;
  double length;
  double breadth;
  std::string rudder;
  double max_rudder;
  double turn_radius;
};

/// Fourteen simulator vessels with their turning-circle radii.
std::span<const TurningCircleRecord> builtin_turning_circles();

/// CSV with header type,length_m,breadth_m,rudder,max_rudder_deg,turn_radius_m.
std::vector<TurningCircleRecord> load_turning_circles(const std::filesystem::path& path);
std::vector<TurningCircleRecord> parse_turning_circles(std::string_view csv);

/// Heading change per meter travelled, degrees/meter.
class SwingRate {
 public:
  constexpr SwingRate() = default;
  explicit SwingRate(double deg_per_m);

  double deg_per_m() const { return value_; }
  double rad_per_m() const { return deg2rad(value_); }
  /// Radius of the circle traced at this rate; infinite for rate 0.
  double radius() const;

 private:
  double value_ = 0.0;
};

SwingRate swing_rate(double turn_radius);
SwingRate scaled_swing_rate(SwingRate rate, double alpha);
/// Rate of the record nearest in length; ties go to the smaller rate.
SwingRate estimate_swing_rate(double length, std::span<const TurningCircleRecord> table);

enum class TurnDirection { Clockwise, CounterClockwise };

std::string_view to_string(TurnDirection d);

/// Pose after travelling `arc_length` meters along a constant-rate turn.
Pose project_arc(const Pose& start, SwingRate rate, double arc_length, TurnDirection direction);

/// Poses at arc lengths step, 2*step, ... up to horizon_arc.
std::vector<Pose> escape_arc_poses(const Pose& start, SwingRate rate, double horizon_arc, double step,
                                   TurnDirection direction);

/// Elliptical ship domain scaled from hull dimensions.
struct ShipDomainSpec {
  double length_multiplier = 2.0;
  double breadth_multiplier = 3.0;

  void validate() const;
};

enum class RestrictionPolicy {
  /// Restricted only if both turn directions are blocked at every decision time.
  BothBlockedEverywhere,
  /// Restricted as soon as any escape-arc domain touches the region boundary.
  AnyEllipse,
};

std::string_view to_string(RestrictionPolicy p);
RestrictionPolicy parse_restriction_policy(std::string_view s);

struct ManeuverParams {
  double horizon = 180.0;        // s, look-ahead along the nominal track
  double decision_step = 10.0;   // s
  double arc_step = 10.0;        // m
  RestrictionPolicy policy = RestrictionPolicy::BothBlockedEverywhere;

  void validate() const;
};

struct DomainSample {
  double arc_length;
  Pose pose;
  bool blocked;
};

struct SideResult {
  bool blocked = false;
  std::optional<double> first_violation_arc_length;
  std::vector<DomainSample> samples;
};

struct DecisionPoint {
  double t;  // seconds after the assessed state
  Pose origin;
  SideResult cw;
  SideResult ccw;
};

struct ManeuverAssessment {
  std::vector<DecisionPoint> decisions;
  bool restricted = false;
  bool degenerate = false;  // no feasible water at all
  RestrictionPolicy policy = RestrictionPolicy::BothBlockedEverywhere;
  double swing_rate = 0.0;  // deg/m actually used
  double escape_arc_length = 0.0;
  double domain_semi_major = 0.0;
  double domain_semi_minor = 0.0;
};

bool apply_policy(RestrictionPolicy policy, std::span<const DecisionPoint> decisions);

/// Sweeps CW and CCW escape arcs from points along the target's
/// straight-line track and tests the ship domain against the feasible
/// region at every arc sample.
ManeuverAssessment assess_maneuverability(const VesselState& target, double length, double breadth, SwingRate rate,
                                          const ShipDomainSpec& domain, const FeasibleRegion& feasible,
                                          const ManeuverParams& params);

}  // namespace rule9
