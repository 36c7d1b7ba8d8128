#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rule9/geo.hpp"
#include "rule9/geojson.hpp"

namespace rule9 {

/// Chart area kept in both frames: the geodetic rings it was read from
/// (written back verbatim) and their NED projection.
struct ChartArea {
  std::vector<geojson::GeoRing> geodetic;  // exterior first
  Polygon ned;
};

/// Water is at least `min_depth` meters deep everywhere inside `area`.
struct DepthContour {
  double min_depth;
  ChartArea area;
};

class SeaChart {
 public:
  struct Contour {
    double min_depth;
    std::vector<geojson::GeoRing> rings;
  };

  /// Projects every ring about `origin` and validates polygons, nesting of
  /// contours (deeper inside shallower) and land/water separation.
  SeaChart(GeodeticPoint origin, std::vector<Contour> contours, std::vector<std::vector<geojson::GeoRing>> land);

  const GeodeticPoint& origin() const { return origin_; }
  const std::vector<DepthContour>& contours() const { return contours_; }
  const std::vector<ChartArea>& land() const { return land_; }

 private:
  GeodeticPoint origin_;
  std::vector<DepthContour> contours_;
  std::vector<ChartArea> land_;
};

/// Navigable water for a vessel: the union of contours at least
/// `required_depth` deep, stored as the pairwise-disjoint maximal contours.
struct FeasibleRegion {
  double required_depth = 0.0;
  std::vector<Polygon> region;

  bool empty() const { return region.empty(); }
  bool contains(const NedPoint& p) const { return point_in_region(p, region); }
};

inline constexpr double kDefaultUkcFraction = 0.10;

SeaChart parse_chart(const nlohmann::json& doc);
SeaChart load_chart(const std::filesystem::path& path);
nlohmann::json chart_to_geojson(const SeaChart& chart);
void save_chart(const SeaChart& chart, const std::filesystem::path& path);

FeasibleRegion feasible_region(const SeaChart& chart, double draught, double ukc_fraction = kDefaultUkcFraction);

/// GeoJSON overlay of a feasible region.
nlohmann::json feasible_overlay(const FeasibleRegion& region, const GeodeticPoint& origin);

/// East-west channel centred on the origin. The deep contour is
/// `wide_width` across at both ends and necks to `narrow_width` over the
/// middle quarter of the length, with linear tapers of length/8 either
/// side. A shallower flank contour `flank_margin` wider on each side
/// surrounds it, and land strips border the flank.
struct ChannelSpec {
  double length = 4000.0;
  double wide_width = 1200.0;
  double narrow_width = 300.0;
  double narrow_depth = 9.0;
  double flank_depth = 3.0;
  double flank_margin = 300.0;
  double land_width = 500.0;
  double origin_lat = 57.05;
  double origin_lon = 9.94;
};

SeaChart synth_channel_chart(const ChannelSpec& spec);

/// Width of a polygon's exterior measured north-south along the meridian
/// `east` (sum of inside intervals).
double north_south_extent(const Polygon& poly, double east);

}  // namespace rule9
