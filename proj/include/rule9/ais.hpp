#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rule9/geo.hpp"

namespace rule9 {

struct AisRecord {
  std::uint64_t mmsi = 0;
  double timestamp = 0.0;  // seconds since the Unix epoch, UTC
  GeodeticPoint position{0.0, 0.0};
  double sog = 0.0;  // knots
  double cog = 0.0;  // degrees
  std::optional<double> length;
  std::optional<double> breadth;
  std::optional<double> draught;
  std::optional<std::string> nav_status;
};

struct AisParseResult {
  std::vector<AisRecord> records;
  std::size_t dropped = 0;
};

inline constexpr std::string_view kAisHeader =
    "mmsi,timestamp_iso8601,lat,lon,sog_kn,cog_deg,length_m,breadth_m,draught_m,nav_status";

/// Rows whose mandatory fields fail to parse are dropped and counted.
AisParseResult parse_ais_csv(std::string_view csv);
AisParseResult load_ais_csv(const std::filesystem::path& path);

/// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z]" as UTC.
double parse_iso8601(std::string_view s);

class RegionFilter {
 public:
  RegionFilter(double lat_min, double lat_max, double lon_min, double lon_max);

  double lat_min() const { return lat_min_; }
  double lat_max() const { return lat_max_; }
  double lon_min() const { return lon_min_; }
  double lon_max() const { return lon_max_; }

  /// Inclusive on all four bounds.
  bool contains(const GeodeticPoint& p) const;

 private:
  double lat_min_, lat_max_, lon_min_, lon_max_;
};

/// Aalborg fjord study area.
RegionFilter aalborg_region();

std::vector<AisRecord> filter_region(std::span<const AisRecord> records, const RegionFilter& filter);

struct Summary {
  double mean;
  double median;
  double std;  // population
  double min;
  double max;
  std::size_t count;
};

struct DimensionStats {
  std::optional<Summary> length;
  std::optional<Summary> breadth;
  std::optional<Summary> draught;
};

/// Statistics over one sample per MMSI (its latest reported value for
/// each dimension).
DimensionStats dimension_stats(std::span<const AisRecord> records);

std::optional<Summary> summarize(std::vector<double> values);

std::string format_stats_table(const DimensionStats& stats);
nlohmann::json stats_to_json(const DimensionStats& stats);

}  // namespace rule9
