#pragma once

#include "rule9/geo.hpp"

namespace rule9 {

inline constexpr double kKnot = 0.514444;  // m/s per knot

constexpr double knots_to_mps(double kn) { return kn * kKnot; }

/// Straight-line kinematic state. sog in m/s, t in seconds.
class VesselState {
 public:
  VesselState() = default;
  VesselState(NedPoint position, double sog, Heading cog, double t = 0.0);

  const NedPoint& position() const { return position_; }
  double sog() const { return sog_; }
  Heading cog() const { return cog_; }
  double t() const { return t_; }

  NedPoint velocity() const;
  Pose pose() const { return {position_, cog_}; }

 private:
  NedPoint position_;
  double sog_ = 0.0;
  Heading cog_;
  double t_ = 0.0;
};

struct CpaResult {
  double tcpa = 0.0;
  double dcpa = 0.0;
  NedPoint own_at_cpa;
  NedPoint target_at_cpa;
};

VesselState predict(const VesselState& state, double dt);

/// Closed-form closest approach over t >= 0. Diverging or zero relative
/// velocity yields tcpa = 0 and the current distance.
CpaResult cpa(const VesselState& own, const VesselState& target);

/// dcpa < cpa_req and 0 <= tcpa <= tcpa_act.
bool collision_risk(const CpaResult& r, double cpa_req, double tcpa_act);
bool collision_risk(const VesselState& own, const VesselState& target, double cpa_req, double tcpa_act);

}  // namespace rule9
