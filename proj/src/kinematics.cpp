#include "rule9/kinematics.hpp"

#include "rule9/errors.hpp"

namespace rule9 {

VesselState::VesselState(NedPoint position, double sog, Heading cog, double t)
    : position_(position), sog_(sog), cog_(cog), t_(t) {
  if (!(sog >= 0.0) || !std::isfinite(sog)) throw ValidationError("sog must be finite and non-negative");
  if (!std::isfinite(t)) throw ValidationError("timestamp must be finite");
}

NedPoint VesselState::velocity() const {
  return {sog_ * std::cos(cog_.radians()), sog_ * std::sin(cog_.radians())};
}

VesselState predict(const VesselState& state, double dt) {
  if (!(dt >= 0.0)) throw ValidationError("prediction interval must be non-negative");
  return {state.position() + state.velocity() * dt, state.sog(), state.cog(), state.t() + dt};
}

CpaResult cpa(const VesselState& own, const VesselState& target) {
  const NedPoint rel_pos = target.position() - own.position();
  const NedPoint rel_vel = target.velocity() - own.velocity();
  const double speed2 = dot(rel_vel, rel_vel);
  double tcpa = 0.0;
  if (speed2 > 0.0) tcpa = std::max(0.0, -dot(rel_pos, rel_vel) / speed2);
  CpaResult r;
  r.tcpa = tcpa;
  r.own_at_cpa = own.position() + own.velocity() * tcpa;
  r.target_at_cpa = target.position() + target.velocity() * tcpa;
  r.dcpa = (rel_pos + rel_vel * tcpa).norm();
  return r;
}

bool collision_risk(const CpaResult& r, double cpa_req, double tcpa_act) {
  return r.dcpa < cpa_req && r.tcpa >= 0.0 && r.tcpa <= tcpa_act;
}

bool collision_risk(const VesselState& own, const VesselState& target, double cpa_req, double tcpa_act) {
  if (!(cpa_req > 0.0) || !(tcpa_act > 0.0)) throw ValidationError("cpa_req and tcpa_act must be positive");
  return collision_risk(cpa(own, target), cpa_req, tcpa_act);
}

}  // namespace rule9
