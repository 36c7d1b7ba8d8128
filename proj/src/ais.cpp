#include "rule9/ais.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "rule9/errors.hpp"
#include "rule9/text.hpp"

namespace rule9 {

namespace {

std::optional<double> optional_dimension(std::string_view field) {
  const auto t = text::trim(field);
  if (t.empty()) return std::nullopt;
  const double v = text::to_double(t);
  if (v < 0.0) throw ValidationError("negative dimension");
  return v;
}

AisRecord parse_row(std::string_view line) {
  const auto f = text::split(line, ',');
  if (f.size() != 10) throw ParseError("expected 10 fields");
  const long long mmsi = text::to_int(f[0]);
  if (mmsi <= 0) throw ParseError("mmsi must be positive");
  AisRecord r;
  r.mmsi = static_cast<std::uint64_t>(mmsi);
  r.timestamp = parse_iso8601(f[1]);
  r.position = GeodeticPoint(text::to_double(f[2]), text::to_double(f[3]));
  r.sog = text::to_double(f[4]);
  r.cog = text::to_double(f[5]);
  if (r.sog < 0.0) throw ValidationError("negative sog");
  r.length = optional_dimension(f[6]);
  r.breadth = optional_dimension(f[7]);
  r.draught = optional_dimension(f[8]);
  const auto status = text::trim(f[9]);
  if (!status.empty()) r.nav_status = std::string(status);
  return r;
}

}  // namespace

double parse_iso8601(std::string_view s) {
  const std::string str(text::trim(s));
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  int consumed = 0;
  if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%lf%n", &year, &month, &day, &hour, &minute, &second,
                  &consumed) != 6) {
    throw ParseError("bad ISO-8601 timestamp '" + str + "'");
  }
  const std::string_view rest = std::string_view(str).substr(static_cast<std::size_t>(consumed));
  if (!(rest.empty() || rest == "Z" || rest == "+00:00")) {
    throw ParseError("timestamp must be UTC: '" + str + "'");
  }
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || !(second >= 0.0 && second < 61.0)) {
    throw ParseError("timestamp field out of range: '" + str + "'");
  }
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = 0;
  return static_cast<double>(timegm(&tm)) + second;
}

AisParseResult parse_ais_csv(std::string_view csv) {
  const auto lines = text::split_lines(csv);
  if (lines.empty() || text::trim(lines[0]) != kAisHeader) {
    throw ParseError("AIS CSV header must be " + std::string(kAisHeader));
  }
  AisParseResult out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      out.records.push_back(parse_row(lines[i]));
    } catch (const Error&) {
      ++out.dropped;
    }
  }
  return out;
}

AisParseResult load_ais_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_ais_csv(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

RegionFilter::RegionFilter(double lat_min, double lat_max, double lon_min, double lon_max)
    : lat_min_(lat_min), lat_max_(lat_max), lon_min_(lon_min), lon_max_(lon_max) {
  if (!(lat_min < lat_max) || !(lon_min < lon_max)) throw ValidationError("region bounds need min < max");
}

bool RegionFilter::contains(const GeodeticPoint& p) const {
  return lat_min_ <= p.latitude() && p.latitude() <= lat_max_ && lon_min_ <= p.longitude() &&
         p.longitude() <= lon_max_;
}

RegionFilter aalborg_region() { return {57.044196, 57.062865, 9.909933, 9.971545}; }

std::vector<AisRecord> filter_region(std::span<const AisRecord> records, const RegionFilter& filter) {
  std::vector<AisRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const AisRecord& r) { return filter.contains(r.position); });
  return out;
}

std::optional<Summary> summarize(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Summary s{};
  s.count = n;
  s.min = values.front();
  s.max = values.back();
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(n));
  return s;
}

DimensionStats dimension_stats(std::span<const AisRecord> records) {
  struct Latest {
    double timestamp;
    double value;
  };
  // Per vessel, the latest report wins; equal timestamps keep the larger
  // value so the result does not depend on input order.
  auto latest = [&](auto field) {
    std::map<std::uint64_t, Latest> per_vessel;
    for (const auto& r : records) {
      const std::optional<double>& v = r.*field;
      if (!v) continue;
      auto [it, inserted] = per_vessel.try_emplace(r.mmsi, Latest{r.timestamp, *v});
      if (!inserted && (r.timestamp > it->second.timestamp ||
                        (r.timestamp == it->second.timestamp && *v > it->second.value))) {
        it->second = {r.timestamp, *v};
      }
    }
    std::vector<double> values;
    values.reserve(per_vessel.size());
    for (const auto& [mmsi, l] : per_vessel) values.push_back(l.value);
    return summarize(std::move(values));
  };
  return {latest(&AisRecord::length), latest(&AisRecord::breadth), latest(&AisRecord::draught)};
}

std::string format_stats_table(const DimensionStats& stats) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Dimension" << std::right << std::setw(9) << "mean" << std::setw(9) << "median"
      << std::setw(9) << "std" << std::setw(9) << "min" << std::setw(9) << "max" << std::setw(8) << "n" << '\n';
  auto row = [&](const char* name, const std::optional<Summary>& s) {
    out << std::left << std::setw(12) << name << std::right;
    if (!s) {
      out << std::setw(9) << "-" << std::setw(9) << "-" << std::setw(9) << "-" << std::setw(9) << "-" << std::setw(9)
          << "-" << std::setw(8) << 0 << '\n';
      return;
    }
    out << std::fixed << std::setprecision(1) << std::setw(9) << s->mean << std::setw(9) << s->median << std::setw(9)
        << s->std << std::setw(9) << s->min << std::setw(9) << s->max << std::setw(8) << s->count << '\n';
  };
  row("Length (m)", stats.length);
  row("Breadth (m)", stats.breadth);
  row("Draught (m)", stats.draught);
  return out.str();
}

nlohmann::json stats_to_json(const DimensionStats& stats) {
  auto one = [](const std::optional<Summary>& s) -> nlohmann::json {
    if (!s) return nullptr;
    return {{"mean", s->mean}, {"median", s->median}, {"std", s->std},
            {"min", s->min},   {"max", s->max},       {"count", s->count}};
  };
  return {{"length", one(stats.length)}, {"breadth", one(stats.breadth)}, {"draught", one(stats.draught)}};
}

}  // namespace rule9
