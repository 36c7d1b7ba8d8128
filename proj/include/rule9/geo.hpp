#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace rule9 {

inline constexpr double kEarthRadius = 6'371'000.0;

constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Horizontal point in a local north-east frame, meters. Components are
/// always finite.
class NedPoint {
 public:
  constexpr NedPoint() = default;
  NedPoint(double north, double east);

  double north() const { return north_; }
  double east() const { return east_; }
  double norm() const { return std::hypot(north_, east_); }

  NedPoint operator+(const NedPoint& o) const { return {north_ + o.north_, east_ + o.east_}; }
  NedPoint operator-(const NedPoint& o) const { return {north_ - o.north_, east_ - o.east_}; }
  NedPoint operator*(double s) const { return {north_ * s, east_ * s}; }
  bool operator==(const NedPoint&) const = default;

 private:
  double north_ = 0.0;
  double east_ = 0.0;
};

double dot(const NedPoint& a, const NedPoint& b);
double cross(const NedPoint& a, const NedPoint& b);
double distance(const NedPoint& a, const NedPoint& b);

/// Compass heading in degrees clockwise from true north, kept in [0, 360).
class Heading {
 public:
  constexpr Heading() = default;
  explicit Heading(double degrees);

  double degrees() const { return degrees_; }
  double radians() const { return deg2rad(degrees_); }
  bool operator==(const Heading&) const = default;

 private:
  double degrees_ = 0.0;
};

/// Smallest signed difference a - b in degrees, in (-180, 180].
double angle_difference(Heading a, Heading b);

struct Pose {
  NedPoint position;
  Heading heading;
};

/// Closed elliptical region, major axis along `orientation`.
class Ellipse {
 public:
  Ellipse(NedPoint center, double semi_major, double semi_minor, Heading orientation);

  const NedPoint& center() const { return center_; }
  double semi_major() const { return a_; }
  double semi_minor() const { return b_; }
  Heading orientation() const { return orientation_; }

  /// Maps a NED point into the frame where this ellipse is the unit disk.
  NedPoint to_unit_frame(const NedPoint& p) const;
  bool contains(const NedPoint& p) const;
  /// Boundary sampled at `n` evenly spaced parameter angles.
  std::vector<NedPoint> outline(int n) const;

 private:
  NedPoint center_;
  double a_;
  double b_;
  Heading orientation_;
  double cos_;
  double sin_;
};

using Ring = std::vector<NedPoint>;

/// Simple polygon with optional holes. Rings are implicitly closed; the
/// constructor rejects short rings, repeated consecutive vertices and
/// self-intersecting rings.
class Polygon {
 public:
  explicit Polygon(Ring exterior, std::vector<Ring> holes = {});

  const Ring& exterior() const { return exterior_; }
  const std::vector<Ring>& holes() const { return holes_; }

  /// Exterior followed by holes.
  std::vector<const Ring*> rings() const;

 private:
  Ring exterior_;
  std::vector<Ring> holes_;
};

class GeodeticPoint {
 public:
  GeodeticPoint(double latitude, double longitude);

  double latitude() const { return lat_; }
  double longitude() const { return lon_; }
  bool operator==(const GeodeticPoint&) const = default;

 private:
  double lat_;
  double lon_;
};

/// R(psi): body (forward, starboard) to (north, east).
NedPoint rotate_body_to_ned(const NedPoint& body, Heading heading);

/// Equirectangular local tangent-plane projection about `origin`.
NedPoint geodetic_to_ned(const GeodeticPoint& p, const GeodeticPoint& origin);
GeodeticPoint ned_to_geodetic(const NedPoint& p, const GeodeticPoint& origin);

/// Even-odd containment; points on any edge (within 1e-9 m) count as inside.
bool point_in_polygon(const NedPoint& p, const Polygon& poly);
bool point_in_region(const NedPoint& p, std::span<const Polygon> region);

/// Distance from `p` to the closed segment [a, b].
double point_segment_distance(const NedPoint& p, const NedPoint& a, const NedPoint& b);

/// True when the open segments cross at a single interior point.
bool segments_cross(const NedPoint& a, const NedPoint& b, const NedPoint& c, const NedPoint& d);

/// True when the closed segments share at least one point.
bool segments_touch(const NedPoint& a, const NedPoint& b, const NedPoint& c, const NedPoint& d);

/// True iff the closed ellipse touches any ring edge of the region, or the
/// ellipse center lies outside the region. Region polygons are assumed
/// pairwise disjoint.
bool ellipse_intersects_region_boundary(const Ellipse& e, std::span<const Polygon> region);

/// Exterior of `inner` lies inside `outer` (shared boundary allowed).
bool polygon_contains(const Polygon& outer, const Polygon& inner);

/// Interiors overlap. Boundary contact alone does not count.
bool polygons_overlap(const Polygon& a, const Polygon& b);

/// Positive when the ring runs counterclockwise on a north-up map.
double ring_signed_area(const Ring& ring);

}  // namespace rule9
