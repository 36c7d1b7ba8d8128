#include "rule9/sim.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rule9/errors.hpp"
#include "rule9/geojson.hpp"
#include "rule9/records.hpp"
#include "rule9/text.hpp"

namespace rule9 {

using nlohmann::json;
namespace pt = boost::property_tree;

namespace {

// Flattened "section.key" -> value view over an INI document.
class KeyValues {
 public:
  explicit KeyValues(const pt::ptree& root) {
    for (const auto& [name, node] : root) {
      if (node.empty()) {
        values_[name] = node.data();
      } else {
        for (const auto& [key, leaf] : node) {
          if (!leaf.empty()) throw ParseError("nested section under [" + name + "]");
          values_[name + "." + key] = leaf.data();
        }
      }
    }
  }

  void check_known(const std::set<std::string>& known) const {
    for (const auto& [key, value] : values_) {
      if (!known.contains(key)) throw ValidationError("unknown scenario key '" + key + "'");
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  std::string str(const std::string& key) const { return std::string(text::trim(values_.at(key))); }

  double num(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    try {
      return text::to_double(values_.at(key));
    } catch (const ParseError& e) {
      throw ParseError("scenario key '" + key + "': " + e.what());
    }
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = text::lower(str(key));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError("scenario key '" + key + "' must be true or false");
  }

 private:
  std::map<std::string, std::string> values_;
};

const std::set<std::string> kScenarioKeys{
    "duration",
    "timestep",
    "chart",
    "channel.length",
    "channel.wide_width",
    "channel.narrow_width",
    "channel.narrow_depth",
    "channel.flank_depth",
    "channel.flank_margin",
    "channel.land_width",
    "channel.origin_lat",
    "channel.origin_lon",
    "ownship.north",
    "ownship.east",
    "ownship.heading",
    "ownship.speed_kn",
    "ownship.draught",
    "ownship.route",
    "target.north",
    "target.east",
    "target.heading",
    "target.speed_kn",
    "target.length",
    "target.breadth",
    "target.draught",
    "target.nav_status",
    "target.vessel_type",
    "target.has_transponder",
    "assessment.swing_rate",
    "assessment.alpha",
    "assessment.tcpa_act",
    "assessment.cpa_req",
    "assessment.domain_length_multiplier",
    "assessment.domain_breadth_multiplier",
    "assessment.restriction_policy",
    "assessment.ukc_fraction",
    "assessment.arc_step",
    "assessment.decision_step",
    "assessment.horizon",
    "assessment.d2_includes_draught",
    "assessment.reassess_interval",
};

std::vector<NedPoint> parse_route(std::string_view s) {
  std::vector<NedPoint> route;
  for (auto wp : text::split(s, ';')) {
    if (text::trim(wp).empty()) continue;
    const auto ne = text::split(wp, ',');
    if (ne.size() != 2) throw ParseError("route waypoints are 'north,east' separated by ';'");
    route.emplace_back(text::to_double(ne[0]), text::to_double(ne[1]));
  }
  if (route.size() < 2) throw ValidationError("route needs at least two waypoints");
  return route;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000" flicker in fixed-point output.
  if (std::string_view(buf).find_first_not_of("-0.") == std::string_view::npos) return std::string(buf[0] == '-' ? buf + 1 : buf);
  return buf;
}

}  // namespace

AssessmentConfig ScenarioConfig::default_assessment() {
  AssessmentConfig c;
  c.swing_rate = 0.2;
  c.alpha = 0.4;
  c.tcpa_act = 180.0;
  c.cpa_req = 150.0;
  c.maneuver.horizon = c.tcpa_act;
  return c;
}

void ScenarioConfig::validate() const {
  if (!(duration > 0.0)) throw ValidationError("duration must be positive");
  if (!(timestep > 0.0)) throw ValidationError("timestep must be positive");
  if (!(own.speed_kn >= 0.0) || !(target.speed_kn >= 0.0)) throw ValidationError("speeds must be non-negative");
  if (!(own.draught > 0.0)) throw ValidationError("ownship draught must be positive");
  if (!(target.length > 0.0) || !(target.breadth > 0.0) || !(target.draught > 0.0)) {
    throw ValidationError("target dimensions must be positive");
  }
  if (target.nav_status && !target.has_transponder) throw ValidationError("target nav_status requires a transponder");
  if (chart.path.has_value() == chart.synthetic.has_value()) {
    throw ValidationError("scenario needs exactly one chart source");
  }
  if (!(reassess_interval >= 0.0)) throw ValidationError("reassess_interval must be >= 0");
  assessment.validate();
}

ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree root;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  const KeyValues kv(root);
  kv.check_known(kScenarioKeys);

  ScenarioConfig c;
  c.duration = kv.num("duration", c.duration);
  c.timestep = kv.num("timestep", c.timestep);

  if (!kv.has("chart")) throw ValidationError("scenario needs a chart (path or 'synthetic')");
  const std::string chart = kv.str("chart");
  bool has_chart_section = false;
  for (const auto& key : kScenarioKeys) {
    if (key.starts_with("channel.") && kv.has(key)) has_chart_section = true;
  }
  if (chart == "synthetic") {
    ChannelSpec s;
    s.length = kv.num("channel.length", s.length);
    s.wide_width = kv.num("channel.wide_width", s.wide_width);
    s.narrow_width = kv.num("channel.narrow_width", s.narrow_width);
    s.narrow_depth = kv.num("channel.narrow_depth", s.narrow_depth);
    s.flank_depth = kv.num("channel.flank_depth", s.flank_depth);
    s.flank_margin = kv.num("channel.flank_margin", s.flank_margin);
    s.land_width = kv.num("channel.land_width", s.land_width);
    s.origin_lat = kv.num("channel.origin_lat", s.origin_lat);
    s.origin_lon = kv.num("channel.origin_lon", s.origin_lon);
    c.chart.synthetic = s;
  } else {
    if (has_chart_section) throw ValidationError("[channel] keys are only valid with chart = synthetic");
    std::filesystem::path p(chart);
    c.chart.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }

  if (kv.has("ownship.route")) {
    if (kv.has("ownship.north") || kv.has("ownship.east") || kv.has("ownship.heading")) {
      throw ValidationError("ownship.route replaces ownship.north/east/heading");
    }
    c.own.route = parse_route(kv.str("ownship.route"));
    const NedPoint leg = c.own.route[1] - c.own.route[0];
    c.own.start = {c.own.route[0], Heading(rad2deg(std::atan2(leg.east(), leg.north())))};
  } else {
    c.own.start = {{kv.num("ownship.north", 0.0), kv.num("ownship.east", 0.0)}, Heading(kv.num("ownship.heading", 0.0))};
  }
  c.own.speed_kn = kv.num("ownship.speed_kn", c.own.speed_kn);
  c.own.draught = kv.num("ownship.draught", c.own.draught);

  c.target.start = {{kv.num("target.north", 0.0), kv.num("target.east", 0.0)}, Heading(kv.num("target.heading", 0.0))};
  c.target.speed_kn = kv.num("target.speed_kn", c.target.speed_kn);
  c.target.length = kv.num("target.length", c.target.length);
  c.target.breadth = kv.num("target.breadth", c.target.breadth);
  c.target.draught = kv.num("target.draught", c.target.draught);
  if (kv.has("target.nav_status")) c.target.nav_status = kv.str("target.nav_status");
  if (kv.has("target.vessel_type")) c.target.vessel_type = kv.str("target.vessel_type");
  c.target.has_transponder = kv.flag("target.has_transponder", c.target.nav_status.has_value());

  AssessmentConfig& a = c.assessment;
  if (kv.has("assessment.swing_rate")) {
    if (text::lower(kv.str("assessment.swing_rate")) == "table") {
      a.swing_rate.reset();
    } else {
      a.swing_rate = kv.num("assessment.swing_rate", 0.0);
    }
  }
  a.alpha = kv.num("assessment.alpha", a.alpha);
  a.tcpa_act = kv.num("assessment.tcpa_act", a.tcpa_act);
  a.cpa_req = kv.num("assessment.cpa_req", a.cpa_req);
  a.domain.length_multiplier = kv.num("assessment.domain_length_multiplier", a.domain.length_multiplier);
  a.domain.breadth_multiplier = kv.num("assessment.domain_breadth_multiplier", a.domain.breadth_multiplier);
  if (kv.has("assessment.restriction_policy")) {
    a.maneuver.policy = parse_restriction_policy(kv.str("assessment.restriction_policy"));
  }
  a.ukc_fraction = kv.num("assessment.ukc_fraction", a.ukc_fraction);
  a.maneuver.arc_step = kv.num("assessment.arc_step", a.maneuver.arc_step);
  a.maneuver.decision_step = kv.num("assessment.decision_step", a.maneuver.decision_step);
  a.maneuver.horizon = kv.num("assessment.horizon", a.tcpa_act);
  a.d2_includes_draught = kv.flag("assessment.d2_includes_draught", a.d2_includes_draught);
  c.reassess_interval = kv.num("assessment.reassess_interval", c.reassess_interval);

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str(), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Rule9Applied: return "rule9_applied";
    case Outcome::NotApplied: return "not_applied";
    case Outcome::NoRisk: return "no_risk";
  }
  return "?";
}

const SituationAssessment* SimulationTrace::first_assessment() const {
  for (const auto& s : steps) {
    if (s.assessment) return &*s.assessment;
  }
  return nullptr;
}

std::shared_ptr<const SeaChart> resolve_chart(const ChartSource& source) {
  if (source.path) return std::make_shared<const SeaChart>(load_chart(*source.path));
  if (source.synthetic) return std::make_shared<const SeaChart>(synth_channel_chart(*source.synthetic));
  throw ValidationError("no chart source");
}

SimulationTrace run_scenario(const ScenarioConfig& config) {
  config.validate();
  SimulationTrace trace;
  trace.config = config;
  trace.chart = resolve_chart(config.chart);

  const VesselState own0(config.own.start.position, knots_to_mps(config.own.speed_kn), config.own.start.heading, 0.0);
  const VesselState target0(config.target.start.position, knots_to_mps(config.target.speed_kn),
                            config.target.start.heading, 0.0);
  TargetAttributes attrs;
  attrs.length = config.target.length;
  attrs.breadth = config.target.breadth;
  attrs.draught = config.target.draught;
  attrs.nav_status = config.target.nav_status;
  attrs.vessel_type = config.target.vessel_type;
  attrs.has_transponder = config.target.has_transponder;

  const auto n = static_cast<std::size_t>(std::floor(config.duration / config.timestep + 1e-9));
  std::optional<double> last_assessed;
  const SituationAssessment* latest = nullptr;
  trace.steps.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * config.timestep;
    const VesselState own = predict(own0, t);
    const VesselState target = predict(target0, t);
    const CpaResult c = cpa(own, target);
    TraceStep step{t, own, target, c.tcpa, c.dcpa, collision_risk(c, config.assessment.cpa_req,
                                                                   config.assessment.tcpa_act), std::nullopt};
    const bool due = !last_assessed || (config.reassess_interval > 0.0 &&
                                        t >= *last_assessed + config.reassess_interval - 1e-9);
    if (step.risk && due) {
      attrs.state = target;
      step.assessment = assess(own, attrs, *trace.chart, config.assessment);
      if (!last_assessed) {
        trace.trigger_time = t;
        trace.cpa_marker = CpaMarker{t + c.tcpa, c.own_at_cpa, c.target_at_cpa};
        trace.trigger_snapshot = Snapshot{own, attrs, config.assessment};
        trace.target_feasible = feasible_region(*trace.chart, config.target.draught, config.assessment.ukc_fraction);
      }
      last_assessed = t;
    }
    trace.steps.push_back(std::move(step));
    if (trace.steps.back().assessment) latest = &*trace.steps.back().assessment;
  }
  if (latest) trace.outcome = latest->rule9_applied ? Outcome::Rule9Applied : Outcome::NotApplied;
  return trace;
}

std::string trace_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "t,own_north,own_east,own_sog,own_cog,target_north,target_east,target_sog,target_cog,tcpa,dcpa,risk,"
         "assessed,rule9_applied\n";
  for (const auto& s : trace.steps) {
    out << fmt(s.t) << ',' << fmt(s.own.position().north()) << ',' << fmt(s.own.position().east()) << ','
        << fmt(s.own.sog()) << ',' << fmt(s.own.cog().degrees()) << ',' << fmt(s.target.position().north()) << ','
        << fmt(s.target.position().east()) << ',' << fmt(s.target.sog()) << ',' << fmt(s.target.cog().degrees())
        << ',' << fmt(s.tcpa) << ',' << fmt(s.dcpa) << ',' << (s.risk ? 1 : 0) << ',' << (s.assessment ? 1 : 0) << ','
        << (s.assessment && s.assessment->rule9_applied ? 1 : 0) << '\n';
  }
  return out.str();
}

json trace_overlay(const SimulationTrace& trace) {
  const GeodeticPoint& origin = trace.chart->origin();
  json features = json::array();
  std::vector<NedPoint> own_track, target_track;
  for (const auto& s : trace.steps) {
    own_track.push_back(s.own.position());
    target_track.push_back(s.target.position());
  }
  features.push_back(geojson::line_feature(own_track, origin, {{"kind", "track"}, {"vessel", "own"}}));
  features.push_back(geojson::line_feature(target_track, origin, {{"kind", "track"}, {"vessel", "target"}}));

  if (trace.cpa_marker) {
    const auto& m = *trace.cpa_marker;
    features.push_back(geojson::point_feature(m.own, origin, {{"kind", "cpa"}, {"vessel", "own"}, {"time", m.time}}));
    features.push_back(
        geojson::point_feature(m.target, origin, {{"kind", "cpa"}, {"vessel", "target"}, {"time", m.time}}));
  }
  if (trace.target_feasible) {
    for (const auto& poly : trace.target_feasible->region) {
      features.push_back(geojson::polygon_feature(
          poly, origin, {{"kind", "feasible"}, {"required_depth", trace.target_feasible->required_depth}}));
    }
  }
  if (const SituationAssessment* a = trace.first_assessment(); a && a->maneuver) {
    const ManeuverAssessment& m = *a->maneuver;
    for (std::size_t i = 0; i < m.decisions.size(); ++i) {
      const DecisionPoint& d = m.decisions[i];
      for (const auto& [side_name, side] : {std::pair{"cw", &d.cw}, std::pair{"ccw", &d.ccw}}) {
        std::vector<NedPoint> arc{d.origin.position};
        for (const auto& s : side->samples) arc.push_back(s.pose.position);
        features.push_back(geojson::line_feature(
            arc, origin, {{"kind", "escape_arc"}, {"t", d.t}, {"side", side_name}, {"blocked", side->blocked}}));
        // Domains are drawn for the first decision point only.
        if (i != 0) continue;
        for (const auto& s : side->samples) {
          const Ellipse e(s.pose.position, m.domain_semi_major, m.domain_semi_minor, s.pose.heading);
          features.push_back(geojson::ring_feature(
              e.outline(24), origin,
              {{"kind", "domain"}, {"t", d.t}, {"side", side_name}, {"arc_length", s.arc_length}, {"blocked", s.blocked}}));
        }
      }
    }
  }
  json doc = geojson::feature_collection(std::move(features));
  doc["origin"] = {{"lat", origin.latitude()}, {"lon", origin.longitude()}};
  return doc;
}

json snapshot_to_json(const Snapshot& s) {
  return {{"own", records::to_json(s.own)},
          {"target", records::to_json(s.target)},
          {"params", records::to_json(s.params)}};
}

json trace_summary(const SimulationTrace& trace) {
  const auto& c = trace.config;
  json chart = c.chart.path ? json(c.chart.path->filename().string()) : json("synthetic");
  json summary = {
      {"outcome", std::string(to_string(trace.outcome))},
      {"trigger_time", trace.trigger_time ? json(*trace.trigger_time) : json(nullptr)},
      {"steps", trace.steps.size()},
      {"scenario",
       {{"duration", c.duration},
        {"timestep", c.timestep},
        {"chart", chart},
        {"own_speed_kn", c.own.speed_kn},
        {"own_draught", c.own.draught},
        {"target_speed_kn", c.target.speed_kn},
        {"target_length", c.target.length},
        {"target_breadth", c.target.breadth},
        {"target_draught", c.target.draught},
        {"reassess_interval", c.reassess_interval},
        {"assessment", records::to_json(c.assessment)}}},
  };
  if (trace.cpa_marker) {
    const auto& m = *trace.cpa_marker;
    summary["cpa_marker"] = {{"time", m.time},
                             {"own", {{"north", m.own.north()}, {"east", m.own.east()}}},
                             {"target", {{"north", m.target.north()}, {"east", m.target.east()}}}};
  } else {
    summary["cpa_marker"] = nullptr;
  }
  const SituationAssessment* a = trace.first_assessment();
  summary["assessment"] = a ? records::to_json(*a) : json(nullptr);
  summary["snapshot"] = trace.trigger_snapshot ? snapshot_to_json(*trace.trigger_snapshot) : json(nullptr);
  return summary;
}

void write_trace(const SimulationTrace& trace, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (out_dir / name).string());
    out << body;
    if (!out) throw IoError("write failed: " + (out_dir / name).string());
  };
  write("trace.csv", trace_csv(trace));
  write("overlay.geojson", trace_overlay(trace).dump(1) + "\n");
  write("summary.json", trace_summary(trace).dump(2) + "\n");
}

}  // namespace rule9
