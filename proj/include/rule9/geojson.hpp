#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <vector>

#include "rule9/geo.hpp"

namespace rule9::geojson {

using GeoRing = std::vector<GeodeticPoint>;

nlohmann::json position(const GeodeticPoint& p);
nlohmann::json ring(const GeoRing& ring);  // closes the ring

/// Feature constructors. NED inputs are projected about `origin`.
nlohmann::json polygon_feature(std::span<const GeoRing> rings, nlohmann::json properties);
nlohmann::json polygon_feature(const Polygon& poly, const GeodeticPoint& origin, nlohmann::json properties);
nlohmann::json ring_feature(const Ring& ring, const GeodeticPoint& origin, nlohmann::json properties);
nlohmann::json line_feature(std::span<const NedPoint> pts, const GeodeticPoint& origin, nlohmann::json properties);
nlohmann::json point_feature(const NedPoint& p, const GeodeticPoint& origin, nlohmann::json properties);

nlohmann::json feature_collection(nlohmann::json features);

/// Reads a linear ring from a GeoJSON coordinate array, dropping the
/// closing duplicate vertex when present.
GeoRing parse_ring(const nlohmann::json& coords);

}  // namespace rule9::geojson
