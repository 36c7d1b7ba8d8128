#include <doctest.h>

#include <algorithm>
#include <random>

#include "rule9/ais.hpp"
#include "rule9/errors.hpp"
#include "support.hpp"

using namespace rule9;
using doctest::Approx;
namespace ts = testsupport;

namespace {

AisRecord vessel(std::uint64_t mmsi, double lat, double lon, std::optional<double> length, double t = 0.0) {
  AisRecord r;
  r.mmsi = mmsi;
  r.timestamp = t;
  r.position = GeodeticPoint(lat, lon);
  r.length = length;
  return r;
}

}  // namespace

TEST_CASE("parse fixtures") {
  const auto ten = load_ais_csv(ts::fixture_dir() / "ais_ten.csv");
  CHECK(ten.records.size() == 10);
  CHECK(ten.dropped == 0);
  CHECK(ten.records[0].mmsi == 219000001u);
  CHECK(ten.records[0].sog == 7.0);
  CHECK(ten.records[0].nav_status == "under way using engine");
  CHECK_FALSE(ten.records[1].nav_status);
  CHECK_FALSE(ten.records[3].length);
  CHECK(ten.records[5].timestamp - ten.records[4].timestamp == Approx(10.5));

  const auto corrupt = load_ais_csv(ts::fixture_dir() / "ais_corrupt_lat.csv");
  CHECK(corrupt.records.size() == 9);
  CHECK(corrupt.dropped == 1);

  const auto empty = load_ais_csv(ts::fixture_dir() / "ais_header_only.csv");
  CHECK(empty.records.empty());
  CHECK(empty.dropped == 0);

  CHECK_THROWS_AS(load_ais_csv(ts::fixture_dir() / "ais_bad_header.csv"), ParseError);
  CHECK_THROWS_AS(load_ais_csv(ts::fixture_dir() / "nope.csv"), IoError);
}

TEST_CASE("row-level rejects") {
  const std::string h = std::string(kAisHeader) + "\n";
  auto dropped = [&](const std::string& row) { return parse_ais_csv(h + row + "\n").dropped; };
  CHECK(dropped("1,2020-01-01T00:00:00Z,57.05,9.95,1,1,10,3,1,") == 0);
  CHECK(dropped("1,2020-01-01T00:00:00Z,95.00,9.95,1,1,10,3,1,") == 1);
  CHECK(dropped("1,2020-01-01T00:00:00Z,57.05,9.95,-1,1,10,3,1,") == 1);
  CHECK(dropped("1,2020-01-01T00:00:00Z,57.05,9.95,1,1,-10,3,1,") == 1);
  CHECK(dropped("1,2020-01-01T00:00:00Z,57.05,9.95,1,1,ten,3,1,") == 1);
  CHECK(dropped("x,2020-01-01T00:00:00Z,57.05,9.95,1,1,10,3,1,") == 1);
  CHECK(dropped("1,2020-01-01T00:00:00+02:00,57.05,9.95,1,1,10,3,1,") == 1);
  CHECK(dropped("1,2020-01-01T00:00:00Z,57.05,9.95,1,1,10,3,1") == 1);
}

TEST_CASE("timestamps") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0.0);
  CHECK(parse_iso8601("2020-06-01T08:00:00Z") == 1590998400.0);
  CHECK(parse_iso8601("2020-06-01T08:00:00.25") == 1590998400.25);
  CHECK_THROWS_AS(parse_iso8601("2020-13-01T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601("June 1st"), ParseError);
}

TEST_CASE("region filter") {
  const RegionFilter f = aalborg_region();
  CHECK(f.contains(GeodeticPoint(57.05, 9.95)));
  CHECK(f.contains(GeodeticPoint(57.044196, 9.909933)));
  CHECK(f.contains(GeodeticPoint(57.062865, 9.971545)));
  CHECK_FALSE(f.contains(GeodeticPoint(57.10, 9.95)));
  CHECK_FALSE(f.contains(GeodeticPoint(57.05, 9.9099)));
  CHECK_THROWS_AS(RegionFilter(1, 0, 0, 1), ValidationError);

  const auto ten = load_ais_csv(ts::fixture_dir() / "ais_ten.csv").records;
  const auto once = filter_region(ten, f);
  CHECK(once.size() == 9);
  const auto twice = filter_region(once, f);
  CHECK(twice.size() == once.size());
}

TEST_CASE("summary statistics") {
  std::vector<AisRecord> recs;
  for (int i = 1; i <= 5; ++i) recs.push_back(vessel(static_cast<std::uint64_t>(i), 57.05, 9.95, i));
  const auto s = dimension_stats(recs);
  REQUIRE(s.length);
  CHECK(s.length->mean == Approx(3.0));
  CHECK(s.length->median == Approx(3.0));
  CHECK(s.length->std == Approx(std::sqrt(2.0)));
  CHECK(s.length->min == 1.0);
  CHECK(s.length->max == 5.0);
  CHECK_FALSE(s.breadth);

  const auto single = dimension_stats(std::vector<AisRecord>{vessel(7, 57.05, 9.95, 42.0)});
  CHECK(single.length->std == 0.0);
  CHECK(single.length->mean == 42.0);
  CHECK(single.length->median == 42.0);

  CHECK(summarize({1.0, 2.0, 3.0, 10.0})->median == 2.5);
  CHECK_FALSE(summarize({}));
}

TEST_CASE("latest report per vessel wins") {
  const std::vector<AisRecord> recs{vessel(1, 57.05, 9.95, 30.0, 10), vessel(1, 57.05, 9.95, 40.0, 20),
                                    vessel(2, 57.05, 9.95, 10.0, 0), vessel(1, 57.05, 9.95, std::nullopt, 30)};
  const auto s = dimension_stats(recs);
  CHECK(s.length->count == 2);
  CHECK(s.length->mean == Approx(25.0));
}

TEST_CASE("statistics ignore order and duplication") {
  auto recs = load_ais_csv(ts::data_dir() / "ais/synthetic_fleet.csv").records;
  const auto base = stats_to_json(dimension_stats(recs)).dump();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(recs.begin(), recs.end(), rng);
    CHECK(stats_to_json(dimension_stats(recs)).dump() == base);
  }
  auto doubled = recs;
  doubled.insert(doubled.end(), recs.begin(), recs.end());
  CHECK(stats_to_json(dimension_stats(doubled)).dump() == base);
}

TEST_CASE("synthetic fleet reproduces the generator targets") {
  const auto parsed = load_ais_csv(ts::data_dir() / "ais/synthetic_fleet.csv");
  CHECK(parsed.dropped == 3);
  const auto s = dimension_stats(filter_region(parsed.records, aalborg_region()));
  struct Target {
    const std::optional<Summary>& got;
    double mean, median, min, max;
  };
  for (const Target& t : {Target{s.length, 50.1, 33.0, 5.0, 240.0}, Target{s.breadth, 9.2, 8.0, 1.0, 34.0},
                          Target{s.draught, 3.2, 2.7, 0.1, 9.3}}) {
    REQUIRE(t.got);
    CHECK(std::abs(t.got->mean - t.mean) <= 0.1);
    CHECK(std::abs(t.got->median - t.median) <= 0.1);
    CHECK(std::abs(t.got->min - t.min) <= 0.1);
    CHECK(std::abs(t.got->max - t.max) <= 0.1);
  }
  // Unfiltered, the out-of-area ships drag the statistics away.
  CHECK(dimension_stats(parsed.records).length->max > 300.0);
}

TEST_CASE("table formatting") {
  const auto table = format_stats_table(dimension_stats(load_ais_csv(ts::fixture_dir() / "ais_ten.csv").records));
  CHECK(table.find("Length (m)") != std::string::npos);
  CHECK(table.find("Draught (m)") != std::string::npos);
}
