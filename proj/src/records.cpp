#include "rule9/records.hpp"

#include <set>

#include "rule9/errors.hpp"

namespace rule9::records {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ValidationError(std::string("unknown key '") + key + "' in " + what);
  }
}

double number(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw ValidationError(std::string(what) + " is missing '" + key + "'");
  if (!j[key].is_number()) throw ParseError(std::string(what) + "." + key + " must be a number");
  return j[key].get<double>();
}

std::optional<double> optional_number(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return number(j, key, what);
}

std::optional<std::string> optional_string(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw ParseError(std::string(what) + "." + key + " must be a string");
  return j[key].get<std::string>();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

const std::set<std::string> kVesselKeys{"north", "east", "sog", "cog", "t"};

VesselState vessel_fields(const json& j, const char* what) {
  return VesselState({number(j, "north", what), number(j, "east", what)}, number(j, "sog", what),
                     Heading(number(j, "cog", what)), optional_number(j, "t", what).value_or(0.0));
}

json side_json(const SideResult& s) {
  return {{"blocked", s.blocked}, {"first_violation_arc_length", optional_json(s.first_violation_arc_length)}};
}

}  // namespace

json to_json(const VesselState& s) {
  return {{"north", s.position().north()},
          {"east", s.position().east()},
          {"sog", s.sog()},
          {"cog", s.cog().degrees()},
          {"t", s.t()}};
}

VesselState vessel_from_json(const json& j) {
  reject_unknown(j, kVesselKeys, "vessel");
  return vessel_fields(j, "vessel");
}

json to_json(const TargetAttributes& t) {
  json j = to_json(t.state);
  j["length"] = optional_json(t.length);
  j["breadth"] = optional_json(t.breadth);
  j["draught"] = optional_json(t.draught);
  j["nav_status"] = optional_json(t.nav_status);
  j["vessel_type"] = t.vessel_type;
  j["sub_type"] = optional_json(t.sub_type);
  j["has_transponder"] = t.has_transponder;
  return j;
}

TargetAttributes target_from_json(const json& j) {
  std::set<std::string> allowed = kVesselKeys;
  allowed.insert({"length", "breadth", "draught", "nav_status", "vessel_type", "sub_type", "has_transponder"});
  reject_unknown(j, allowed, "target");
  TargetAttributes t;
  t.state = vessel_fields(j, "target");
  t.length = optional_number(j, "length", "target");
  t.breadth = optional_number(j, "breadth", "target");
  t.draught = optional_number(j, "draught", "target");
  t.nav_status = optional_string(j, "nav_status", "target");
  t.vessel_type = optional_string(j, "vessel_type", "target").value_or("vessel");
  t.sub_type = optional_string(j, "sub_type", "target");
  if (j.contains("has_transponder")) {
    if (!j["has_transponder"].is_boolean()) throw ParseError("target.has_transponder must be a boolean");
    t.has_transponder = j["has_transponder"].get<bool>();
  } else {
    t.has_transponder = t.nav_status.has_value();
  }
  t.validate();
  return t;
}

json to_json(const AssessmentConfig& c) {
  return {{"swing_rate", optional_json(c.swing_rate)},
          {"alpha", c.alpha},
          {"cpa_req", c.cpa_req},
          {"tcpa_act", c.tcpa_act},
          {"domain_length_multiplier", c.domain.length_multiplier},
          {"domain_breadth_multiplier", c.domain.breadth_multiplier},
          {"restriction_policy", std::string(to_string(c.maneuver.policy))},
          {"horizon", c.maneuver.horizon},
          {"decision_step", c.maneuver.decision_step},
          {"arc_step", c.maneuver.arc_step},
          {"ukc_fraction", c.ukc_fraction},
          {"d2_includes_draught", c.d2_includes_draught}};
}

AssessmentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"swing_rate", "alpha", "cpa_req", "tcpa_act", "domain_length_multiplier",
                  "domain_breadth_multiplier", "restriction_policy", "horizon", "decision_step", "arc_step",
                  "ukc_fraction", "d2_includes_draught"},
                 "params");
  AssessmentConfig c;
  const char* what = "params";
  c.swing_rate = optional_number(j, "swing_rate", what);
  c.alpha = optional_number(j, "alpha", what).value_or(c.alpha);
  c.cpa_req = optional_number(j, "cpa_req", what).value_or(c.cpa_req);
  c.tcpa_act = optional_number(j, "tcpa_act", what).value_or(c.tcpa_act);
  c.domain.length_multiplier = optional_number(j, "domain_length_multiplier", what).value_or(c.domain.length_multiplier);
  c.domain.breadth_multiplier =
      optional_number(j, "domain_breadth_multiplier", what).value_or(c.domain.breadth_multiplier);
  if (auto p = optional_string(j, "restriction_policy", what)) c.maneuver.policy = parse_restriction_policy(*p);
  // The look-ahead defaults to the reaction threshold.
  c.maneuver.horizon = optional_number(j, "horizon", what).value_or(c.tcpa_act);
  c.maneuver.decision_step = optional_number(j, "decision_step", what).value_or(c.maneuver.decision_step);
  c.maneuver.arc_step = optional_number(j, "arc_step", what).value_or(c.maneuver.arc_step);
  c.ukc_fraction = optional_number(j, "ukc_fraction", what).value_or(c.ukc_fraction);
  if (j.contains("d2_includes_draught")) {
    if (!j["d2_includes_draught"].is_boolean()) throw ParseError("params.d2_includes_draught must be a boolean");
    c.d2_includes_draught = j["d2_includes_draught"].get<bool>();
  }
  c.validate();
  return c;
}

json to_json(const ManeuverAssessment& m) {
  json decisions = json::array();
  for (const auto& d : m.decisions) {
    decisions.push_back({{"t", d.t},
                         {"origin", {{"north", d.origin.position.north()},
                                     {"east", d.origin.position.east()},
                                     {"heading", d.origin.heading.degrees()}}},
                         {"cw", side_json(d.cw)},
                         {"ccw", side_json(d.ccw)}});
  }
  return {{"restricted", m.restricted},
          {"degenerate", m.degenerate},
          {"policy", std::string(to_string(m.policy))},
          {"swing_rate", m.swing_rate},
          {"escape_arc_length", m.escape_arc_length},
          {"domain_semi_major", m.domain_semi_major},
          {"domain_semi_minor", m.domain_semi_minor},
          {"decisions", std::move(decisions)}};
}

json to_json(const SituationAssessment& a) {
  return {{"timestamp", a.timestamp},
          {"encounter", {{"kind", std::string(to_string(a.encounter.kind))},
                         {"relative_bearing", a.encounter.relative_bearing}}},
          {"initial_duty_own", std::string(to_string(a.initial_duty_own))},
          {"final_duty_own", std::string(to_string(a.final_duty_own))},
          {"initial_duty_target", std::string(to_string(a.initial_duty_target))},
          {"final_duty_target", std::string(to_string(a.final_duty_target))},
          {"rule9_applied", a.rule9_applied},
          {"events", a.events},
          {"trace", a.trace},
          {"required_depth", optional_json(a.required_depth)},
          {"maneuver", a.maneuver ? to_json(*a.maneuver) : json(nullptr)}};
}

}  // namespace rule9::records
