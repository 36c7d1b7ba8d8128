#include "rule9/geo.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rule9/errors.hpp"

namespace rule9 {

namespace {

constexpr double kEdgeTolerance = 1e-9;

double orient(const NedPoint& a, const NedPoint& b, const NedPoint& c) {
  return cross(b - a, c - a);
}

bool within_box(const NedPoint& a, const NedPoint& b, const NedPoint& p) {
  return std::min(a.north(), b.north()) <= p.north() && p.north() <= std::max(a.north(), b.north()) &&
         std::min(a.east(), b.east()) <= p.east() && p.east() <= std::max(a.east(), b.east());
}

bool on_ring_boundary(const NedPoint& p, const Ring& ring) {
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    if (point_segment_distance(p, ring[j], ring[i]) <= kEdgeTolerance) return true;
  }
  return false;
}

bool on_boundary(const NedPoint& p, const Polygon& poly) {
  for (const Ring* ring : poly.rings()) {
    if (on_ring_boundary(p, *ring)) return true;
  }
  return false;
}

// Crossing-number parity for one ring. Boundary points are undefined here;
// callers test the boundary first.
bool ring_parity(const NedPoint& p, const Ring& ring) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const NedPoint& a = ring[i];
    const NedPoint& b = ring[j];
    if ((a.north() > p.north()) != (b.north() > p.north())) {
      double east_at = a.east() + (p.north() - a.north()) * (b.east() - a.east()) / (b.north() - a.north());
      if (p.east() < east_at) inside = !inside;
    }
  }
  return inside;
}

void validate_ring(const Ring& ring, const char* what) {
  if (ring.size() < 3) {
    throw ValidationError(std::string(what) + " ring has " + std::to_string(ring.size()) +
                          " vertices; at least 3 required");
  }
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) {
      throw ValidationError(std::string(what) + " ring repeats vertex " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const NedPoint& a = ring[i];
    const NedPoint& b = ring[(i + 1) % n];
    const NedPoint& c = ring[(i + 2) % n];
    // Adjacent edges folding back onto each other.
    if (orient(a, b, c) == 0.0 && dot(b - a, c - b) < 0.0) {
      throw ValidationError(std::string(what) + " ring folds back at vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_touch(a, b, ring[j], ring[(j + 1) % n])) {
        throw ValidationError(std::string(what) + " ring self-intersects (edges " + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
    }
  }
  if (ring_signed_area(ring) == 0.0) {
    throw ValidationError(std::string(what) + " ring has zero area");
  }
}

}  // namespace

NedPoint::NedPoint(double north, double east) : north_(north), east_(east) {
  if (!std::isfinite(north) || !std::isfinite(east)) {
    throw ValidationError("NED point components must be finite");
  }
}

double dot(const NedPoint& a, const NedPoint& b) { return a.north() * b.north() + a.east() * b.east(); }
double cross(const NedPoint& a, const NedPoint& b) { return a.north() * b.east() - a.east() * b.north(); }
double distance(const NedPoint& a, const NedPoint& b) { return (a - b).norm(); }

Heading::Heading(double degrees) {
  if (!std::isfinite(degrees)) throw ValidationError("heading must be finite");
  double d = std::fmod(degrees, 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d = 0.0;
  degrees_ = d;
}

double angle_difference(Heading a, Heading b) {
  double d = a.degrees() - b.degrees();
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

Ellipse::Ellipse(NedPoint center, double semi_major, double semi_minor, Heading orientation)
    : center_(center),
      a_(semi_major),
      b_(semi_minor),
      orientation_(orientation),
      cos_(std::cos(orientation.radians())),
      sin_(std::sin(orientation.radians())) {
  if (!(semi_major > 0.0) || !(semi_minor > 0.0) || !std::isfinite(semi_major) || !std::isfinite(semi_minor)) {
    throw ValidationError("ellipse semi-axes must be positive and finite");
  }
  if (semi_major < semi_minor) {
    throw ValidationError("ellipse semi-major axis must not be shorter than the semi-minor axis");
  }
}

NedPoint Ellipse::to_unit_frame(const NedPoint& p) const {
  const double dn = p.north() - center_.north();
  const double de = p.east() - center_.east();
  return {(dn * cos_ + de * sin_) / a_, (de * cos_ - dn * sin_) / b_};
}

bool Ellipse::contains(const NedPoint& p) const {
  const NedPoint u = to_unit_frame(p);
  return dot(u, u) <= 1.0;
}

std::vector<NedPoint> Ellipse::outline(int n) const {
  std::vector<NedPoint> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n;
    pts.push_back(center_ + rotate_body_to_ned({a_ * std::cos(theta), b_ * std::sin(theta)}, orientation_));
  }
  return pts;
}

Polygon::Polygon(Ring exterior, std::vector<Ring> holes) : exterior_(std::move(exterior)), holes_(std::move(holes)) {
  validate_ring(exterior_, "exterior");
  for (const Ring& hole : holes_) {
    validate_ring(hole, "hole");
    for (const NedPoint& p : hole) {
      if (!on_ring_boundary(p, exterior_) && !ring_parity(p, exterior_)) {
        throw ValidationError("hole vertex lies outside the exterior ring");
      }
    }
  }
}

std::vector<const Ring*> Polygon::rings() const {
  std::vector<const Ring*> out{&exterior_};
  for (const Ring& h : holes_) out.push_back(&h);
  return out;
}

GeodeticPoint::GeodeticPoint(double latitude, double longitude) : lat_(latitude), lon_(longitude) {
  if (!(latitude >= -90.0 && latitude <= 90.0)) {
    throw ValidationError("latitude " + std::to_string(latitude) + " outside [-90, 90]");
  }
  if (!(longitude >= -180.0 && longitude <= 180.0)) {
    throw ValidationError("longitude " + std::to_string(longitude) + " outside [-180, 180]");
  }
}

NedPoint rotate_body_to_ned(const NedPoint& body, Heading heading) {
  const double c = std::cos(heading.radians());
  const double s = std::sin(heading.radians());
  return {c * body.north() - s * body.east(), s * body.north() + c * body.east()};
}

NedPoint geodetic_to_ned(const GeodeticPoint& p, const GeodeticPoint& origin) {
  const double north = kEarthRadius * deg2rad(p.latitude() - origin.latitude());
  const double east = kEarthRadius * std::cos(deg2rad(origin.latitude())) * deg2rad(p.longitude() - origin.longitude());
  return {north, east};
}

GeodeticPoint ned_to_geodetic(const NedPoint& p, const GeodeticPoint& origin) {
  const double lat = origin.latitude() + rad2deg(p.north() / kEarthRadius);
  const double lon = origin.longitude() + rad2deg(p.east() / (kEarthRadius * std::cos(deg2rad(origin.latitude()))));
  return {lat, lon};
}

bool point_in_polygon(const NedPoint& p, const Polygon& poly) {
  if (on_boundary(p, poly)) return true;
  bool inside = false;
  for (const Ring* ring : poly.rings()) {
    if (ring_parity(p, *ring)) inside = !inside;
  }
  return inside;
}

bool point_in_region(const NedPoint& p, std::span<const Polygon> region) {
  return std::any_of(region.begin(), region.end(), [&](const Polygon& poly) { return point_in_polygon(p, poly); });
}

double point_segment_distance(const NedPoint& p, const NedPoint& a, const NedPoint& b) {
  const NedPoint ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

bool segments_cross(const NedPoint& a, const NedPoint& b, const NedPoint& c, const NedPoint& d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

bool segments_touch(const NedPoint& a, const NedPoint& b, const NedPoint& c, const NedPoint& d) {
  if (segments_cross(a, b, c, d)) return true;
  if (orient(a, b, c) == 0.0 && within_box(a, b, c)) return true;
  if (orient(a, b, d) == 0.0 && within_box(a, b, d)) return true;
  if (orient(c, d, a) == 0.0 && within_box(c, d, a)) return true;
  if (orient(c, d, b) == 0.0 && within_box(c, d, b)) return true;
  return false;
}

bool ellipse_intersects_region_boundary(const Ellipse& e, std::span<const Polygon> region) {
  const NedPoint origin{};
  for (const Polygon& poly : region) {
    for (const Ring* ring : poly.rings()) {
      const Ring& r = *ring;
      NedPoint prev = e.to_unit_frame(r.back());
      for (const NedPoint& v : r) {
        const NedPoint cur = e.to_unit_frame(v);
        if (point_segment_distance(origin, prev, cur) <= 1.0) return true;
        prev = cur;
      }
    }
  }
  return !point_in_region(e.center(), region);
}

bool polygon_contains(const Polygon& outer, const Polygon& inner) {
  const Ring& ring = inner.exterior();
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    if (!point_in_polygon(ring[i], outer)) return false;
    if (!point_in_polygon((ring[i] + ring[j]) * 0.5, outer)) return false;
    for (const Ring* o : outer.rings()) {
      for (std::size_t k = 0, l = o->size() - 1; k < o->size(); l = k++) {
        if (segments_cross(ring[j], ring[i], (*o)[l], (*o)[k])) return false;
      }
    }
  }
  return true;
}

bool polygons_overlap(const Polygon& a, const Polygon& b) {
  for (const Ring* ra : a.rings()) {
    for (const Ring* rb : b.rings()) {
      for (std::size_t i = 0, j = ra->size() - 1; i < ra->size(); j = i++) {
        for (std::size_t k = 0, l = rb->size() - 1; k < rb->size(); l = k++) {
          if (segments_cross((*ra)[j], (*ra)[i], (*rb)[l], (*rb)[k])) return true;
        }
      }
    }
  }
  auto strictly_inside = [](const NedPoint& p, const Polygon& poly) {
    return point_in_polygon(p, poly) && !on_boundary(p, poly);
  };
  auto probe = [&](const Polygon& from, const Polygon& into) {
    const Ring& r = from.exterior();
    // Sign that turns an edge direction into its inward normal.
    const double inward = ring_signed_area(r) > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
      const NedPoint mid = (r[i] + r[j]) * 0.5;
      if (strictly_inside(r[i], into) || strictly_inside(mid, into)) return true;
      const NedPoint edge = r[i] - r[j];
      const NedPoint normal = NedPoint{edge.east(), -edge.north()} * (inward * 1e-6);
      const NedPoint nudged = mid + normal;
      if (point_in_polygon(nudged, from) && strictly_inside(nudged, into)) return true;
    }
    return false;
  };
  return probe(a, b) || probe(b, a);
}

double ring_signed_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    twice += ring[j].east() * ring[i].north() - ring[i].east() * ring[j].north();
  }
  return 0.5 * twice;
}

}  // namespace rule9
