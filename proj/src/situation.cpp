#include "rule9/situation.hpp"

#include <cmath>

#include "rule9/automaton.hpp"
#include "rule9/errors.hpp"
#include "rule9/text.hpp"

namespace rule9 {

namespace {

constexpr double kHeadOnSector = 6.0;
constexpr double kReciprocalTolerance = 12.0;
constexpr double kAbaftBeam = 112.5;

bool astern_sector(double bearing) { return bearing > kAbaftBeam && bearing < 360.0 - kAbaftBeam; }

std::string normalize_status(std::string_view s) {
  std::string raw = text::lower(text::trim(s));
  std::string out;
  for (char c : raw) {
    if (c == '_' || c == '-') c = ' ';
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  if (auto pos = out.find("maneuverability"); pos != std::string::npos) {
    out.replace(pos, 15, "manoeuvrability");
  }
  return out;
}

}  // namespace

void TargetAttributes::validate() const {
  for (const auto& [name, v] : {std::pair{"length", length}, {"breadth", breadth}, {"draught", draught}}) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) throw ValidationError(std::string("target ") + name + " must be > 0");
  }
  if (nav_status && !has_transponder) throw ValidationError("nav_status requires has_transponder");
}

std::string_view to_string(EncounterKind k) {
  switch (k) {
    case EncounterKind::HeadOn: return "head_on";
    case EncounterKind::CrossingPort: return "crossing_port";
    case EncounterKind::CrossingStarboard: return "crossing_starboard";
    case EncounterKind::OvertakingOwn: return "overtaking_own";
    case EncounterKind::OvertakenByTarget: return "overtaken_by_target";
  }
  return "?";
}

EncounterKind parse_encounter_kind(std::string_view s) {
  for (auto k : {EncounterKind::HeadOn, EncounterKind::CrossingPort, EncounterKind::CrossingStarboard,
                 EncounterKind::OvertakingOwn, EncounterKind::OvertakenByTarget}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown encounter kind '" + std::string(s) + "'");
}

std::string_view to_string(Duty d) { return d == Duty::GiveWay ? "give_way" : "stand_on"; }

double relative_bearing(const VesselState& own, const VesselState& target) {
  const NedPoint d = target.position() - own.position();
  const double absolute = rad2deg(std::atan2(d.east(), d.north()));
  return Heading(absolute - own.cog().degrees()).degrees();
}

Encounter classify_encounter(const VesselState& own, const VesselState& target) {
  if (own.sog() == 0.0 && target.sog() == 0.0) throw ValidationError("no encounter: both vessels are stationary");
  const double bearing = relative_bearing(own, target);
  const bool ahead = bearing <= kHeadOnSector || bearing >= 360.0 - kHeadOnSector;
  const bool reciprocal =
      std::abs(angle_difference(target.cog(), Heading(own.cog().degrees() + 180.0))) <= kReciprocalTolerance;

  EncounterKind kind;
  if (ahead && reciprocal) {
    kind = EncounterKind::HeadOn;
  } else if (astern_sector(bearing)) {
    kind = EncounterKind::OvertakenByTarget;
  } else if (astern_sector(relative_bearing(target, own))) {
    kind = EncounterKind::OvertakingOwn;
  } else if (bearing < 180.0) {
    kind = EncounterKind::CrossingStarboard;
  } else {
    kind = EncounterKind::CrossingPort;
  }
  return {kind, bearing};
}

Duty initial_duty(EncounterKind kind) {
  switch (kind) {
    case EncounterKind::CrossingPort: return Duty::StandOn;
    case EncounterKind::CrossingStarboard: return Duty::GiveWay;
    case EncounterKind::HeadOn: return Duty::GiveWay;
    case EncounterKind::OvertakenByTarget: return Duty::StandOn;
    case EncounterKind::OvertakingOwn: return Duty::GiveWay;
  }
  return Duty::GiveWay;
}

Duty initial_duty_target(EncounterKind kind) {
  // Head-on both alter course; otherwise duties are complementary.
  return kind == EncounterKind::HeadOn ? Duty::GiveWay : opposite(initial_duty(kind));
}

AssessmentEvent event_d2(const TargetAttributes& target, bool include_draught) {
  if (!target.has_transponder || !target.nav_status) return AssessmentEvent::NotD2;
  const std::string status = normalize_status(*target.nav_status);
  if (status == "restricted manoeuvrability") return AssessmentEvent::D2;
  if (include_draught && (status == "constrained by draught" || status == "constrained by her draught")) {
    return AssessmentEvent::D2;
  }
  return AssessmentEvent::NotD2;
}

void AssessmentConfig::validate() const {
  if (swing_rate && !(*swing_rate >= 0.0 && std::isfinite(*swing_rate))) {
    throw ValidationError("swing_rate must be finite and >= 0");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  if (!(cpa_req > 0.0)) throw ValidationError("cpa_req must be positive");
  if (!(tcpa_act > 0.0)) throw ValidationError("tcpa_act must be positive");
  if (!(ukc_fraction >= 0.0)) throw ValidationError("ukc_fraction must be >= 0");
  domain.validate();
  maneuver.validate();
}

SituationAssessment assess(const VesselState& own, const TargetAttributes& target, const SeaChart& chart,
                           const AssessmentConfig& config) {
  config.validate();
  target.validate();

  SituationAssessment out;
  out.timestamp = own.t();
  out.encounter = classify_encounter(own, target.state);
  out.initial_duty_own = initial_duty(out.encounter.kind);
  out.initial_duty_target = initial_duty_target(out.encounter.kind);

  const Dfa& dfa = g_d();
  std::string state = dfa.initial();
  out.trace.push_back(state);
  auto feed = [&](AssessmentEvent e) {
    const std::string ev(label(e));
    try {
      state = dfa.step(state, ev);
    } catch (const UndefinedTransition& err) {
      throw UndefinedTransition(err.state(), err.event(), static_cast<std::ptrdiff_t>(out.events.size()));
    }
    out.events.push_back(ev);
    if (state != out.trace.back()) out.trace.push_back(state);
  };

  // d1: the target is the give-way vessel, i.e. ownship stands on.
  const bool d1 = out.initial_duty_own == Duty::StandOn;
  feed(assessment_event(1, d1));
  if (d1) {
    const AssessmentEvent d2 = event_d2(target, config.d2_includes_draught);
    feed(d2);
    if (d2 == AssessmentEvent::NotD2) {
      if (!target.length || !target.breadth || !target.draught) {
        throw ValidationError("manoeuvrability assessment needs target length, breadth and draught");
      }
      const FeasibleRegion feasible = feasible_region(chart, *target.draught, config.ukc_fraction);
      out.required_depth = feasible.required_depth;
      const SwingRate base = config.swing_rate
                                 ? SwingRate(*config.swing_rate)
                                 : estimate_swing_rate(*target.length, config.turning_circles.empty()
                                                                           ? builtin_turning_circles()
                                                                           : config.turning_circles);
      const SwingRate rate = scaled_swing_rate(base, config.alpha);
      out.maneuver = assess_maneuverability(target.state, *target.length, *target.breadth, rate, config.domain,
                                            feasible, config.maneuver);
      feed(assessment_event(3, out.maneuver->restricted));
    }
  }

  out.rule9_applied = state == gd::D4;
  out.final_duty_own = out.rule9_applied ? opposite(out.initial_duty_own) : out.initial_duty_own;
  out.final_duty_target = out.rule9_applied ? opposite(out.initial_duty_target) : out.initial_duty_target;
  return out;
}

}  // namespace rule9
