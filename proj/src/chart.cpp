#include "rule9/chart.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "rule9/errors.hpp"

namespace rule9 {

using nlohmann::json;

namespace {

ChartArea make_area(std::vector<geojson::GeoRing> rings, const GeodeticPoint& origin) {
  if (rings.empty()) throw ValidationError("polygon without rings");
  auto project = [&](const geojson::GeoRing& r) {
    Ring out;
    out.reserve(r.size());
    for (const auto& g : r) out.push_back(geodetic_to_ned(g, origin));
    return out;
  };
  Ring exterior = project(rings.front());
  std::vector<Ring> holes;
  for (std::size_t i = 1; i < rings.size(); ++i) holes.push_back(project(rings[i]));
  Polygon poly(std::move(exterior), std::move(holes));
  return ChartArea{std::move(rings), std::move(poly)};
}

std::vector<geojson::GeoRing> parse_polygon_coords(const json& coords) {
  if (!coords.is_array() || coords.empty()) throw ParseError("polygon coordinates must be a non-empty array");
  std::vector<geojson::GeoRing> rings;
  for (const auto& r : coords) rings.push_back(geojson::parse_ring(r));
  return rings;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

SeaChart::SeaChart(GeodeticPoint origin, std::vector<Contour> contours,
                   std::vector<std::vector<geojson::GeoRing>> land)
    : origin_(origin) {
  for (std::size_t i = 0; i < contours.size(); ++i) {
    auto& c = contours[i];
    if (!(c.min_depth >= 0.0) || !std::isfinite(c.min_depth)) {
      throw ValidationError("contour " + std::to_string(i) + " has invalid min_depth");
    }
    try {
      contours_.push_back(DepthContour{c.min_depth, make_area(std::move(c.rings), origin_)});
    } catch (const ValidationError& e) {
      throw ValidationError("contour " + std::to_string(i) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < land.size(); ++i) {
    try {
      land_.push_back(make_area(std::move(land[i]), origin_));
    } catch (const ValidationError& e) {
      throw ValidationError("land " + std::to_string(i) + ": " + e.what());
    }
  }

  // Every contour lies inside some contour of each shallower depth level.
  std::set<double> levels;
  for (const auto& c : contours_) levels.insert(c.min_depth);
  for (std::size_t i = 0; i < contours_.size(); ++i) {
    const auto& inner = contours_[i];
    for (double level : levels) {
      if (level >= inner.min_depth) break;
      bool nested = std::any_of(contours_.begin(), contours_.end(), [&](const DepthContour& outer) {
        return outer.min_depth == level && polygon_contains(outer.area.ned, inner.area.ned);
      });
      if (!nested) {
        std::ostringstream msg;
        msg << "contour " << i << " (" << inner.min_depth << " m) is not contained in any " << level
            << " m contour";
        throw ValidationError(msg.str());
      }
    }
  }

  for (std::size_t i = 0; i < land_.size(); ++i) {
    for (const auto& c : contours_) {
      if (c.min_depth > 0.0 && polygons_overlap(land_[i].ned, c.area.ned)) {
        throw ValidationError("land " + std::to_string(i) + " overlaps a " + std::to_string(c.min_depth) +
                              " m contour");
      }
    }
  }
}

SeaChart parse_chart(const json& doc) {
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
    throw ParseError("chart must be a GeoJSON FeatureCollection");
  }
  if (!doc.contains("origin") || !doc["origin"].is_object()) {
    throw ParseError("chart is missing the top-level origin {lat, lon}");
  }
  const auto& o = doc["origin"];
  if (!o.contains("lat") || !o.contains("lon") || !o["lat"].is_number() || !o["lon"].is_number()) {
    throw ParseError("origin requires numeric lat and lon");
  }
  GeodeticPoint origin(o["lat"].get<double>(), o["lon"].get<double>());

  std::vector<SeaChart::Contour> contours;
  std::vector<std::vector<geojson::GeoRing>> land;
  if (!doc.contains("features") || !doc["features"].is_array()) throw ParseError("chart has no features array");
  for (const auto& f : doc["features"]) {
    const json props = f.value("properties", json::object());
    const std::string kind = props.value("kind", "");
    const json& geom = f.at("geometry");
    const std::string gtype = geom.value("type", "");
    std::vector<std::vector<geojson::GeoRing>> polys;
    if (gtype == "Polygon") {
      polys.push_back(parse_polygon_coords(geom.at("coordinates")));
    } else if (gtype == "MultiPolygon") {
      for (const auto& p : geom.at("coordinates")) polys.push_back(parse_polygon_coords(p));
    } else {
      throw ParseError("unsupported geometry type '" + gtype + "'");
    }
    if (kind == "contour") {
      if (!props.contains("min_depth") || !props["min_depth"].is_number()) {
        throw ParseError("contour feature without numeric min_depth");
      }
      for (auto& p : polys) contours.push_back({props["min_depth"].get<double>(), std::move(p)});
    } else if (kind == "land") {
      for (auto& p : polys) land.push_back(std::move(p));
    } else {
      throw ParseError("feature kind must be 'contour' or 'land', got '" + kind + "'");
    }
  }
  return SeaChart(origin, std::move(contours), std::move(land));
}

SeaChart load_chart(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return parse_chart(doc);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json chart_to_geojson(const SeaChart& chart) {
  json features = json::array();
  for (const auto& c : chart.contours()) {
    features.push_back(geojson::polygon_feature(c.area.geodetic, {{"kind", "contour"}, {"min_depth", c.min_depth}}));
  }
  for (const auto& l : chart.land()) {
    features.push_back(geojson::polygon_feature(l.geodetic, {{"kind", "land"}}));
  }
  json doc = geojson::feature_collection(std::move(features));
  doc["origin"] = {{"lat", chart.origin().latitude()}, {"lon", chart.origin().longitude()}};
  return doc;
}

void save_chart(const SeaChart& chart, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << chart_to_geojson(chart).dump(1) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

FeasibleRegion feasible_region(const SeaChart& chart, double draught, double ukc_fraction) {
  if (!(draught > 0.0) || !std::isfinite(draught)) throw ValidationError("draught must be positive");
  if (!(ukc_fraction >= 0.0) || !std::isfinite(ukc_fraction)) throw ValidationError("ukc_fraction must be >= 0");

  FeasibleRegion out;
  out.required_depth = draught * (1.0 + ukc_fraction);
  // Deeper qualifying contours are nested in the shallowest qualifying
  // level, so that level alone is the union.
  double shallowest = std::numeric_limits<double>::infinity();
  for (const auto& c : chart.contours()) {
    if (c.min_depth >= out.required_depth) shallowest = std::min(shallowest, c.min_depth);
  }
  for (const auto& c : chart.contours()) {
    if (c.min_depth == shallowest) out.region.push_back(c.area.ned);
  }
  return out;
}

json feasible_overlay(const FeasibleRegion& region, const GeodeticPoint& origin) {
  json features = json::array();
  for (const auto& poly : region.region) {
    features.push_back(
        geojson::polygon_feature(poly, origin, {{"kind", "feasible"}, {"required_depth", region.required_depth}}));
  }
  json doc = geojson::feature_collection(std::move(features));
  doc["origin"] = {{"lat", origin.latitude()}, {"lon", origin.longitude()}};
  return doc;
}

SeaChart synth_channel_chart(const ChannelSpec& s) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(s.length) || !positive(s.wide_width) || !positive(s.narrow_width) || !positive(s.narrow_depth) ||
      !positive(s.flank_depth) || !(s.flank_margin >= 0.0) || !positive(s.land_width)) {
    throw ValidationError("channel dimensions and depths must be positive");
  }
  if (s.narrow_width > s.wide_width) throw ValidationError("narrow_width must not exceed wide_width");
  if (!(s.flank_depth < s.narrow_depth)) throw ValidationError("flank_depth must be shallower than narrow_depth");

  const GeodeticPoint origin(s.origin_lat, s.origin_lon);
  auto geo_ring = [&](const std::vector<std::pair<double, double>>& east_north) {
    geojson::GeoRing r;
    for (auto [e, n] : east_north) r.push_back(ned_to_geodetic({n, e}, origin));
    return r;
  };
  auto rect = [&](double e0, double e1, double n0, double n1) {
    return geo_ring({{e0, n0}, {e1, n0}, {e1, n1}, {e0, n1}});
  };

  const double x = s.length / 2.0;
  const double wide = s.wide_width / 2.0;
  const double narrow = s.narrow_width / 2.0;
  const double neck = s.length / 8.0;  // neck half-length; tapers span another length/8
  geojson::GeoRing deep;
  if (s.narrow_width == s.wide_width) {
    deep = rect(-x, x, -wide, wide);
  } else {
    deep = geo_ring({{-x, -wide},
                     {-2 * neck, -wide},
                     {-neck, -narrow},
                     {neck, -narrow},
                     {2 * neck, -wide},
                     {x, -wide},
                     {x, wide},
                     {2 * neck, wide},
                     {neck, narrow},
                     {-neck, narrow},
                     {-2 * neck, wide},
                     {-x, wide}});
  }
  const double flank = wide + s.flank_margin;
  std::vector<SeaChart::Contour> contours{
      {s.flank_depth, {rect(-x, x, -flank, flank)}},
      {s.narrow_depth, {std::move(deep)}},
  };
  std::vector<std::vector<geojson::GeoRing>> land{
      {rect(-x, x, flank, flank + s.land_width)},
      {rect(-x, x, -flank - s.land_width, -flank)},
  };
  return SeaChart(origin, std::move(contours), std::move(land));
}

double north_south_extent(const Polygon& poly, double east) {
  std::vector<double> hits;
  const Ring& r = poly.exterior();
  for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
    const NedPoint& a = r[j];
    const NedPoint& b = r[i];
    if ((a.east() > east) != (b.east() > east)) {
      hits.push_back(a.north() + (east - a.east()) * (b.north() - a.north()) / (b.east() - a.east()));
    }
  }
  std::sort(hits.begin(), hits.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < hits.size(); i += 2) total += hits[i + 1] - hits[i];
  return total;
}

}  // namespace rule9
