#include "rule9/maneuver.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <sstream>

#include "rule9/errors.hpp"
#include "rule9/text.hpp"

namespace rule9 {

namespace {

// Below this rate the arc is evaluated as a straight line.
constexpr double kStraightRate = 1e-9;  // deg/m

const std::array<TurningCircleRecord, 14> kTurningCircles{{
    {"fishing", 33.0, 8.0, "normal", 35.0, 74.1},
    {"bulk carrier", 192.3, 20.4, "normal", 35.0, 694.5},
    {"bulk carrier", 199.7, 31.8, "normal", 44.0, 601.9},
    {"bulk carrier", 363.6, 65.0, "normal", 35.0, 740.8},
    {"unknown", 265.6, 44.0, "becker", 65.0, 342.6},
    {"supply", 110.0, 24.0, "normal", 35.0, 250.0},
    {"coastguard", 55.3, 9.7, "normal", 35.0, 175.9},
    {"container", 294.4, 32.4, "normal", 37.0, 463.0},
    {"container", 165.0, 27.5, "normal", 35.0, 324.1},
    {"cruiseship", 338.3, 56.0, "azipod", 180.0, 500.0},
    {"cruiseship", 260.4, 37.4, "normal", 42.0, 416.7},
    {"vehicle carrier", 201.1, 34.1, "normal", 35.0, 324.1},
    {"tanker", 145.8, 24.0, "becker", 60.0, 231.5},
    {"tanker", 277.0, 42.7, "normal", 45.0, 435.2},
}};

void validate_record(const TurningCircleRecord& r) {
  if (!(r.length > 0.0) || !(r.breadth > 0.0) || !(r.turn_radius > 0.0)) {
    throw ValidationError("turning circle record '" + r.vessel_type + "' needs positive length, breadth and radius");
  }
  if (!(r.max_rudder > 0.0 && r.max_rudder <= 180.0)) {
    throw ValidationError("turning circle record '" + r.vessel_type + "' has max rudder outside (0, 180]");
  }
}

}  // namespace

std::span<const TurningCircleRecord> builtin_turning_circles() { return kTurningCircles; }

std::vector<TurningCircleRecord> parse_turning_circles(std::string_view csv) {
  std::vector<TurningCircleRecord> out;
  const auto lines = text::split_lines(csv);
  if (lines.empty() || text::trim(lines[0]) != "type,length_m,breadth_m,rudder,max_rudder_deg,turn_radius_m") {
    throw ParseError("turning-circle CSV header must be type,length_m,breadth_m,rudder,max_rudder_deg,turn_radius_m");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split(lines[i], ',');
    if (f.size() != 6) throw ParseError("turning-circle CSV line " + std::to_string(i + 1) + ": expected 6 fields");
    TurningCircleRecord r;
    try {
      r = {std::string(text::trim(f[0])), text::to_double(f[1]), text::to_double(f[2]), std::string(text::trim(f[3])),
           text::to_double(f[4]),         text::to_double(f[5])};
    } catch (const ParseError& e) {
      throw ParseError("turning-circle CSV line " + std::to_string(i + 1) + ": " + e.what());
    }
    validate_record(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TurningCircleRecord> load_turning_circles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_turning_circles(ss.str());
}

SwingRate::SwingRate(double deg_per_m) : value_(deg_per_m) {
  if (!(deg_per_m >= 0.0) || !std::isfinite(deg_per_m)) throw ValidationError("swing rate must be finite and >= 0");
}

double SwingRate::radius() const {
  if (value_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / rad_per_m();
}

SwingRate swing_rate(double turn_radius) {
  if (!(turn_radius > 0.0) || !std::isfinite(turn_radius)) throw ValidationError("turn radius must be positive");
  return SwingRate(360.0 / (2.0 * std::numbers::pi * turn_radius));
}

SwingRate scaled_swing_rate(SwingRate rate, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  return SwingRate(rate.deg_per_m() * alpha);
}

SwingRate estimate_swing_rate(double length, std::span<const TurningCircleRecord> table) {
  if (table.empty()) throw ValidationError("turning-circle table is empty");
  if (!(length > 0.0)) throw ValidationError("vessel length must be positive");
  const TurningCircleRecord* best = nullptr;
  for (const auto& r : table) {
    if (best == nullptr) {
      best = &r;
      continue;
    }
    const double d = std::abs(r.length - length);
    const double best_d = std::abs(best->length - length);
    // Equal distance: the larger radius (smaller rate) is conservative.
    if (d < best_d || (d == best_d && r.turn_radius > best->turn_radius)) best = &r;
  }
  return swing_rate(best->turn_radius);
}

std::string_view to_string(TurnDirection d) { return d == TurnDirection::Clockwise ? "cw" : "ccw"; }

Pose project_arc(const Pose& start, SwingRate rate, double arc_length, TurnDirection direction) {
  if (!(arc_length >= 0.0)) throw ValidationError("arc length must be non-negative");
  const double sign = direction == TurnDirection::Clockwise ? 1.0 : -1.0;
  NedPoint body;
  if (rate.deg_per_m() < kStraightRate) {
    body = {arc_length, 0.0};
  } else {
    // Signed curvature keeps one formula for both turn directions.
    const double kappa = sign * rate.rad_per_m();
    const double swing = arc_length * kappa;
    const double half = std::sin(swing / 2.0);
    body = {std::sin(swing) / kappa, 2.0 * half * half / kappa};
  }
  const NedPoint position = start.position + rotate_body_to_ned(body, start.heading);
  const Heading heading(start.heading.degrees() + sign * arc_length * rate.deg_per_m());
  return {position, heading};
}

std::vector<Pose> escape_arc_poses(const Pose& start, SwingRate rate, double horizon_arc, double step,
                                   TurnDirection direction) {
  if (!(step > 0.0)) throw ValidationError("arc step must be positive");
  if (!(horizon_arc >= step)) throw ValidationError("arc horizon must be at least one step");
  const auto count = static_cast<std::size_t>(std::floor(horizon_arc / step + 1e-9));
  std::vector<Pose> poses;
  poses.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    poses.push_back(project_arc(start, rate, static_cast<double>(i) * step, direction));
  }
  return poses;
}

void ShipDomainSpec::validate() const {
  if (!(length_multiplier > 0.0) || !(breadth_multiplier > 0.0)) {
    throw ValidationError("ship domain multipliers must be positive");
  }
}

std::string_view to_string(RestrictionPolicy p) {
  return p == RestrictionPolicy::BothBlockedEverywhere ? "both_blocked_everywhere" : "any_ellipse";
}

RestrictionPolicy parse_restriction_policy(std::string_view s) {
  const std::string v = text::lower(text::trim(s));
  if (v == "both_blocked_everywhere") return RestrictionPolicy::BothBlockedEverywhere;
  if (v == "any_ellipse") return RestrictionPolicy::AnyEllipse;
  throw ValidationError("unknown restriction policy '" + std::string(s) +
                        "' (expected both_blocked_everywhere or any_ellipse)");
}

void ManeuverParams::validate() const {
  if (!(horizon > 0.0)) throw ValidationError("maneuver horizon must be positive");
  if (!(decision_step > 0.0)) throw ValidationError("decision step must be positive");
  if (!(arc_step > 0.0)) throw ValidationError("arc step must be positive");
}

bool apply_policy(RestrictionPolicy policy, std::span<const DecisionPoint> decisions) {
  switch (policy) {
    case RestrictionPolicy::BothBlockedEverywhere:
      return !decisions.empty() && std::all_of(decisions.begin(), decisions.end(),
                                               [](const DecisionPoint& d) { return d.cw.blocked && d.ccw.blocked; });
    case RestrictionPolicy::AnyEllipse:
      return std::any_of(decisions.begin(), decisions.end(),
                         [](const DecisionPoint& d) { return d.cw.blocked || d.ccw.blocked; });
  }
  return false;
}

namespace {

SideResult sweep(const Pose& origin, SwingRate rate, double arc_length, double arc_step, TurnDirection dir,
                 double a, double b, const FeasibleRegion& feasible) {
  SideResult side;
  const auto poses = escape_arc_poses(origin, rate, arc_length, arc_step, dir);
  side.samples.reserve(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const double l = static_cast<double>(i + 1) * arc_step;
    const Ellipse domain(poses[i].position, a, b, poses[i].heading);
    const bool blocked = ellipse_intersects_region_boundary(domain, feasible.region);
    if (blocked && !side.blocked) {
      side.blocked = true;
      side.first_violation_arc_length = l;
    }
    side.samples.push_back({l, poses[i], blocked});
  }
  return side;
}

}  // namespace

ManeuverAssessment assess_maneuverability(const VesselState& target, double length, double breadth, SwingRate rate,
                                          const ShipDomainSpec& domain, const FeasibleRegion& feasible,
                                          const ManeuverParams& params) {
  params.validate();
  domain.validate();
  if (!(target.sog() > 0.0)) throw ValidationError("manoeuvrability assessment needs a moving target");
  if (!(length > 0.0) || !(breadth > 0.0)) throw ValidationError("target length and breadth must be positive");

  ManeuverAssessment out;
  out.policy = params.policy;
  out.swing_rate = rate.deg_per_m();
  out.domain_semi_major = domain.length_multiplier * length;
  out.domain_semi_minor = domain.breadth_multiplier * breadth;
  if (out.domain_semi_major < out.domain_semi_minor) {
    throw ValidationError("ship domain semi-major axis (length-based) is shorter than the semi-minor axis");
  }
  // Every decision point gets the full look-ahead as its escape arc.
  out.escape_arc_length = target.sog() * params.horizon;

  if (feasible.empty()) {
    out.restricted = true;
    out.degenerate = true;
    return out;
  }
  if (out.escape_arc_length < params.arc_step) {
    throw ValidationError("escape arc (sog x horizon) is shorter than one arc step");
  }

  const auto steps = static_cast<std::size_t>(std::floor(params.horizon / params.decision_step + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * params.decision_step;
    DecisionPoint d;
    d.t = t;
    d.origin = predict(target, t).pose();
    d.cw = sweep(d.origin, rate, out.escape_arc_length, params.arc_step, TurnDirection::Clockwise,
                 out.domain_semi_major, out.domain_semi_minor, feasible);
    d.ccw = sweep(d.origin, rate, out.escape_arc_length, params.arc_step, TurnDirection::CounterClockwise,
                  out.domain_semi_major, out.domain_semi_minor, feasible);
    out.decisions.push_back(std::move(d));
  }
  out.restricted = apply_policy(params.policy, out.decisions);
  return out;
}

}  // namespace rule9
