#include <doctest.h>

#include <random>

#include "rule9/chart.hpp"
#include "rule9/errors.hpp"
#include "support.hpp"

using namespace rule9;
using doctest::Approx;
namespace ts = testsupport;

TEST_CASE("fixture chart loads two contours and land") {
  const SeaChart chart = load_chart(ts::fixture_dir() / "two_contours.geojson");
  REQUIRE(chart.contours().size() == 2);
  CHECK(chart.contours()[0].min_depth == 2.0);
  CHECK(chart.contours()[1].min_depth == 6.0);
  CHECK(chart.land().size() == 1);
  CHECK(chart.origin() == GeodeticPoint(57.05, 9.94));
}

TEST_CASE("chart loading errors") {
  CHECK_THROWS_AS(load_chart(ts::fixture_dir() / "two_vertex_ring.geojson"), ValidationError);
  CHECK_THROWS_AS(load_chart(ts::fixture_dir() / "not_nested.geojson"), ValidationError);
  CHECK_THROWS_AS(load_chart(ts::fixture_dir() / "malformed.geojson"), ParseError);
  CHECK_THROWS_AS(load_chart(ts::fixture_dir() / "missing.geojson"), IoError);
  CHECK_THROWS_AS(parse_chart(nlohmann::json::parse(R"({"type":"FeatureCollection","features":[]})")), ParseError);
  CHECK_THROWS_AS(parse_chart(nlohmann::json::parse(
                      R"({"type":"FeatureCollection","origin":{"lat":57,"lon":9},"features":[
                         {"type":"Feature","properties":{"kind":"reef"},
                          "geometry":{"type":"Polygon","coordinates":[[[9,57],[9.01,57],[9.01,57.01],[9,57]]]}}]})")),
                  ParseError);
}

TEST_CASE("feasible region examples") {
  const SeaChart chart = load_chart(ts::fixture_dir() / "two_contours.geojson");
  const FeasibleRegion deep = feasible_region(chart, 5.0, 0.1);
  CHECK(deep.required_depth == Approx(5.5));
  REQUIRE(deep.region.size() == 1);
  CHECK(deep.region[0].exterior() == chart.contours()[1].area.ned.exterior());

  const FeasibleRegion ferry = feasible_region(chart, 0.5, 0.1);
  REQUIRE(ferry.region.size() == 1);
  // The shallow contour holds the deep one, so it is the union.
  CHECK(ferry.region[0].exterior() == chart.contours()[0].area.ned.exterior());
  CHECK(ferry.contains(chart.contours()[1].area.ned.exterior()[0]));

  CHECK(feasible_region(chart, 50.0, 0.0).empty());
  // Boundary inclusive.
  CHECK(feasible_region(chart, 6.0, 0.0).region.size() == 1);
  CHECK_THROWS_AS(feasible_region(chart, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(feasible_region(chart, 1.0, -0.1), ValidationError);
}

TEST_CASE("synthetic channel geometry") {
  ChannelSpec spec;  // 4000, 1200, 300, 9, 3
  const SeaChart chart = synth_channel_chart(spec);
  REQUIRE(chart.contours().size() == 2);
  const Polygon& deep = chart.contours()[1].area.ned;
  CHECK(chart.contours()[1].min_depth == 9.0);
  CHECK(north_south_extent(deep, 0.0) == Approx(300.0).epsilon(1e-9));
  CHECK(north_south_extent(deep, 1900.0) == Approx(1200.0).epsilon(1e-9));
  CHECK(north_south_extent(deep, -1900.0) == Approx(1200.0).epsilon(1e-9));
  CHECK(north_south_extent(chart.contours()[0].area.ned, 0.0) == Approx(1800.0).epsilon(1e-9));

  spec.narrow_width = spec.wide_width;
  const SeaChart uniform = synth_channel_chart(spec);
  CHECK(uniform.contours()[1].area.ned.exterior().size() == 4);
  CHECK(uniform.contours()[0].area.ned.exterior().size() == 4);
  CHECK(north_south_extent(uniform.contours()[1].area.ned, 0.0) == Approx(1200.0).epsilon(1e-9));

  ChannelSpec bad;
  bad.narrow_width = 1500;
  CHECK_THROWS_AS(synth_channel_chart(bad), ValidationError);
  bad = {};
  bad.flank_depth = 9;
  CHECK_THROWS_AS(synth_channel_chart(bad), ValidationError);
}

TEST_CASE("generated chart round-trips bit-identically") {
  const auto dir = ts::scratch_dir("chart_roundtrip");
  const SeaChart chart = synth_channel_chart({});
  save_chart(chart, dir / "a.geojson");
  const SeaChart back = load_chart(dir / "a.geojson");
  save_chart(back, dir / "b.geojson");
  CHECK(ts::slurp(dir / "a.geojson") == ts::slurp(dir / "b.geojson"));
  REQUIRE(back.contours().size() == chart.contours().size());
  for (std::size_t i = 0; i < chart.contours().size(); ++i) {
    CHECK(back.contours()[i].area.ned.exterior() == chart.contours()[i].area.ned.exterior());
  }
}

TEST_CASE("bundled fixtures match their generator settings") {
  ChannelSpec narrow;
  narrow.flank_depth = 4.0;
  CHECK(ts::slurp(ts::data_dir() / "charts/narrow.geojson") == chart_to_geojson(synth_channel_chart(narrow)).dump(1) + "\n");
  ChannelSpec wide = narrow;
  wide.narrow_width = wide.wide_width;
  CHECK(ts::slurp(ts::data_dir() / "charts/wide.geojson") == chart_to_geojson(synth_channel_chart(wide)).dump(1) + "\n");
}

TEST_CASE("deeper draught never grows the feasible region") {
  const SeaChart chart = load_chart(ts::data_dir() / "charts/narrow.geojson");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> n(-1000, 1000), e(-2100, 2100);
  std::vector<NedPoint> probes;
  for (int i = 0; i < 3000; ++i) probes.emplace_back(n(rng), e(rng));
  const double draughts[] = {0.5, 2.0, 3.0, 3.7, 4.0, 5.0, 8.0, 8.2, 9.0, 20.0};
  for (std::size_t k = 1; k < std::size(draughts); ++k) {
    const FeasibleRegion shallow = feasible_region(chart, draughts[k - 1]);
    const FeasibleRegion deep = feasible_region(chart, draughts[k]);
    for (const auto& p : probes) {
      if (deep.contains(p)) CHECK(shallow.contains(p));
    }
  }
}

TEST_CASE("feasible overlay lists the region polygons") {
  const SeaChart chart = load_chart(ts::data_dir() / "charts/narrow.geojson");
  const auto overlay = feasible_overlay(feasible_region(chart, 5.0), chart.origin());
  REQUIRE(overlay["features"].size() == 1);
  CHECK(overlay["features"][0]["properties"]["kind"] == "feasible");
  CHECK(overlay["features"][0]["geometry"]["coordinates"][0].size() == 13);  // 12 vertices, closed
}
