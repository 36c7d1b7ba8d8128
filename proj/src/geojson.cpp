#include "rule9/geojson.hpp"

#include "rule9/errors.hpp"

namespace rule9::geojson {

using nlohmann::json;

json position(const GeodeticPoint& p) { return json::array({p.longitude(), p.latitude()}); }

json ring(const GeoRing& r) {
  json coords = json::array();
  for (const auto& p : r) coords.push_back(position(p));
  if (!r.empty()) coords.push_back(position(r.front()));
  return coords;
}

json polygon_feature(std::span<const GeoRing> rings, json properties) {
  json coords = json::array();
  for (const auto& r : rings) coords.push_back(ring(r));
  return {{"type", "Feature"},
          {"properties", std::move(properties)},
          {"geometry", {{"type", "Polygon"}, {"coordinates", std::move(coords)}}}};
}

namespace {

GeoRing project(const Ring& r, const GeodeticPoint& origin) {
  GeoRing out;
  out.reserve(r.size());
  for (const auto& p : r) out.push_back(ned_to_geodetic(p, origin));
  return out;
}

}  // namespace

json polygon_feature(const Polygon& poly, const GeodeticPoint& origin, json properties) {
  std::vector<GeoRing> rings;
  for (const Ring* r : poly.rings()) rings.push_back(project(*r, origin));
  return polygon_feature(rings, std::move(properties));
}

json ring_feature(const Ring& r, const GeodeticPoint& origin, json properties) {
  std::vector<GeoRing> rings{project(r, origin)};
  return polygon_feature(rings, std::move(properties));
}

json line_feature(std::span<const NedPoint> pts, const GeodeticPoint& origin, json properties) {
  json coords = json::array();
  for (const auto& p : pts) coords.push_back(position(ned_to_geodetic(p, origin)));
  return {{"type", "Feature"},
          {"properties", std::move(properties)},
          {"geometry", {{"type", "LineString"}, {"coordinates", std::move(coords)}}}};
}

json point_feature(const NedPoint& p, const GeodeticPoint& origin, json properties) {
  return {{"type", "Feature"},
          {"properties", std::move(properties)},
          {"geometry", {{"type", "Point"}, {"coordinates", position(ned_to_geodetic(p, origin))}}}};
}

json feature_collection(json features) {
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

GeoRing parse_ring(const json& coords) {
  if (!coords.is_array()) throw ParseError("ring coordinates must be an array");
  GeoRing out;
  for (const auto& c : coords) {
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
      throw ParseError("position must be [lon, lat]");
    }
    out.emplace_back(c[1].get<double>(), c[0].get<double>());
  }
  if (out.size() >= 2 && out.front() == out.back()) out.pop_back();
  return out;
}

}  // namespace rule9::geojson
