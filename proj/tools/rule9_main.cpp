// rule9: scenario runs, one-shot assessments and data utilities.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rule9/ais.hpp"
#include "rule9/chart.hpp"
#include "rule9/errors.hpp"
#include "rule9/maneuver.hpp"
#include "rule9/records.hpp"
#include "rule9/sim.hpp"
#include "rule9/situation.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitProtocol = 4;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rule9::IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Accepts inline JSON ("{...}") or a path to a JSON file.
json json_arg(const std::string& arg, const char* what) {
  const bool inline_doc = arg.find_first_not_of(" \t\r\n") != std::string::npos &&
                          arg[arg.find_first_not_of(" \t\r\n")] == '{';
  const std::string body = inline_doc ? arg : read_file(arg);
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw rule9::ParseError(std::string(what) + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rule9::IoError("cannot write " + path.string());
  out << body;
  if (!out) throw rule9::IoError("write failed: " + path.string());
}

struct SimulateArgs {
  std::string config;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const rule9::ScenarioConfig config = rule9::load_scenario(a.config);
  const rule9::SimulationTrace trace = rule9::run_scenario(config);
  if (!a.out.empty()) rule9::write_trace(trace, a.out);
  std::cout << rule9::to_string(trace.outcome) << '\n';
  return 0;
}

struct AssessArgs {
  std::string chart;
  std::string own;
  std::string target;
  std::string params;
  bool pretty = false;
};

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

int run_assess(const AssessArgs& a) {
  const rule9::SeaChart chart = rule9::load_chart(a.chart);
  const rule9::VesselState own = rule9::records::vessel_from_json(json_arg(a.own, "--own"));
  const rule9::TargetAttributes target = rule9::records::target_from_json(json_arg(a.target, "--target"));
  const rule9::AssessmentConfig config =
      a.params.empty() ? rule9::AssessmentConfig{} : rule9::records::config_from_json(json_arg(a.params, "--params"));
  const rule9::SituationAssessment result = rule9::assess(own, target, chart, config);
  if (!a.pretty) {
    std::cout << rule9::records::to_json(result).dump(2) << '\n';
    return 0;
  }
  std::cout << "encounter      " << rule9::to_string(result.encounter.kind) << " (bearing " << std::fixed
            << std::setprecision(1) << result.encounter.relative_bearing << " deg)\n"
            << "events         " << join(result.events, ", ") << '\n'
            << "trace          " << join(result.trace, " -> ") << '\n'
            << "rule 9         " << (result.rule9_applied ? "applied" : "not applied") << '\n'
            << "own duty       " << rule9::to_string(result.initial_duty_own) << " -> "
            << rule9::to_string(result.final_duty_own) << '\n'
            << "target duty    " << rule9::to_string(result.initial_duty_target) << " -> "
            << rule9::to_string(result.final_duty_target) << '\n';
  if (result.maneuver) {
    std::cout << "restricted     " << (result.maneuver->restricted ? "yes" : "no") << " ("
              << rule9::to_string(result.maneuver->policy) << ", " << std::setprecision(4)
              << result.maneuver->swing_rate << " deg/m)\n";
  }
  return 0;
}

struct SwingArgs {
  std::string csv;
  bool pretty = false;
};

// Lower-bound remark for swing rates, deg/m.
constexpr double kReferenceSwing = 0.1;

int run_swing_table(const SwingArgs& a) {
  std::vector<rule9::TurningCircleRecord> table;
  if (a.csv.empty()) {
    const auto builtin = rule9::builtin_turning_circles();
    table.assign(builtin.begin(), builtin.end());
  } else {
    table = rule9::load_turning_circles(a.csv);
  }
  if (table.empty()) throw rule9::ValidationError("turning-circle table is empty");
  std::size_t min_i = 0;
  std::vector<double> rates;
  for (std::size_t i = 0; i < table.size(); ++i) {
    rates.push_back(rule9::swing_rate(table[i].turn_radius).deg_per_m());
    if (rates[i] < rates[min_i]) min_i = i;
  }
  const bool near_reference = rates[min_i] >= 0.07 && rates[min_i] <= 0.12;
  if (!a.pretty) {
    json rows = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      rows.push_back({{"type", table[i].vessel_type},
                      {"length", table[i].length},
                      {"breadth", table[i].breadth},
                      {"rudder", table[i].rudder},
                      {"max_rudder", table[i].max_rudder},
                      {"turn_radius", table[i].turn_radius},
                      {"swing_rate", rates[i]}});
    }
    std::cout << json{{"rows", rows},
                      {"minimum", {{"index", min_i}, {"type", table[min_i].vessel_type},
                                   {"length", table[min_i].length}, {"swing_rate", rates[min_i]}}},
                      {"reference", kReferenceSwing},
                      {"minimum_near_reference", near_reference}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << std::left << std::setw(26) << "Type" << std::right << std::setw(9) << "L (m)" << std::setw(9) << "r (m)"
            << std::setw(14) << "swing deg/m" << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::cout << std::left << std::setw(26) << table[i].vessel_type << std::right << std::fixed << std::setprecision(1)
              << std::setw(9) << table[i].length << std::setw(9) << table[i].turn_radius << std::setprecision(5)
              << std::setw(14) << rates[i] << (i == min_i ? "  <- min" : "") << '\n';
  }
  std::cout << "minimum " << std::setprecision(5) << rates[min_i] << " deg/m ("
            << table[min_i].vessel_type << ", " << std::setprecision(1) << table[min_i].length << " m); "
            << (near_reference ? "consistent with" : "differs from") << " the ~" << kReferenceSwing
            << " deg/m lower bound\n";
  return 0;
}

struct AisArgs {
  std::string csv;
  std::vector<double> region;
  bool pretty = false;
  std::string out;
};

int run_ais_stats(const AisArgs& a) {
  const rule9::AisParseResult parsed = rule9::load_ais_csv(a.csv);
  const rule9::RegionFilter filter = a.region.empty()
                                         ? rule9::aalborg_region()
                                         : rule9::RegionFilter(a.region[0], a.region[1], a.region[2], a.region[3]);
  const auto kept = rule9::filter_region(parsed.records, filter);
  const rule9::DimensionStats stats = rule9::dimension_stats(kept);
  json doc = rule9::stats_to_json(stats);
  doc["records"] = parsed.records.size();
  doc["dropped"] = parsed.dropped;
  doc["in_region"] = kept.size();
  doc["region"] = {filter.lat_min(), filter.lat_max(), filter.lon_min(), filter.lon_max()};
  if (!a.out.empty()) write_text(a.out, doc.dump(2) + "\n");
  if (a.pretty) {
    std::cout << rule9::format_stats_table(stats) << parsed.records.size() << " records, " << parsed.dropped
              << " dropped, " << kept.size() << " in region\n";
  } else {
    std::cout << doc.dump(2) << '\n';
  }
  return 0;
}

struct FeasibleArgs {
  std::string chart;
  double draught = 0.0;
  double ukc = rule9::kDefaultUkcFraction;
  std::string out;
};

int run_chart_feasible(const FeasibleArgs& a) {
  const rule9::SeaChart chart = rule9::load_chart(a.chart);
  const rule9::FeasibleRegion region = rule9::feasible_region(chart, a.draught, a.ukc);
  const json overlay = rule9::feasible_overlay(region, chart.origin());
  if (a.out.empty()) {
    std::cout << overlay.dump(1) << '\n';
    return 0;
  }
  write_text(a.out, overlay.dump(1) + "\n");
  std::cout << json{{"required_depth", region.required_depth}, {"polygons", region.region.size()}, {"out", a.out}}.dump()
            << '\n';
  return 0;
}

struct MakeChartArgs {
  std::string preset;
  rule9::ChannelSpec spec;
  std::optional<double> narrow_width;
  std::string out;
};

int run_make_chart(MakeChartArgs a) {
  if (a.preset == "uniform") {
    if (a.narrow_width && *a.narrow_width != a.spec.wide_width) {
      throw rule9::ValidationError("--preset uniform needs --narrow-width equal to --wide-width");
    }
    a.spec.narrow_width = a.spec.wide_width;
  } else if (a.narrow_width) {
    a.spec.narrow_width = *a.narrow_width;
  }
  const rule9::SeaChart chart = rule9::synth_channel_chart(a.spec);
  if (a.out.empty()) {
    std::cout << rule9::chart_to_geojson(chart).dump(1) << '\n';
  } else {
    rule9::save_chart(chart, a.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule 9 (narrow channel) applicability assessment", "rule9"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Run a scenario file and print its outcome");
  sim->add_option("--config", sim_args.config, "Scenario file")->required();
  sim->add_option("--out", sim_args.out, "Directory for trace.csv, overlay.geojson and summary.json");

  AssessArgs assess_args;
  auto* assess = app.add_subcommand("assess", "Assess one own/target snapshot");
  assess->add_option("--chart", assess_args.chart, "Chart GeoJSON")->required();
  assess->add_option("--own", assess_args.own, "Ownship state (inline JSON or file)")->required();
  assess->add_option("--target", assess_args.target, "Target attributes (inline JSON or file)")->required();
  assess->add_option("--params", assess_args.params, "Assessment parameters (inline JSON or file)");
  assess->add_flag("--pretty", assess_args.pretty, "Human-readable summary");

  SwingArgs swing_args;
  auto* swing = app.add_subcommand("swing-table", "Swing rates from turning-circle radii");
  swing->add_option("--csv", swing_args.csv, "Turning-circle CSV (default: built-in table)");
  swing->add_flag("--pretty", swing_args.pretty, "Aligned table");

  AisArgs ais_args;
  auto* ais = app.add_subcommand("ais-stats", "Vessel dimension statistics from AIS CSV");
  ais->add_option("--csv", ais_args.csv, "AIS CSV")->required();
  ais->add_option("--region", ais_args.region, "lat_min lat_max lon_min lon_max (default: Aalborg fjord)")
      ->expected(4);
  ais->add_flag("--pretty", ais_args.pretty, "Aligned table");
  ais->add_option("--out", ais_args.out, "Write statistics JSON here");

  FeasibleArgs feasible_args;
  auto* feasible = app.add_subcommand("chart-feasible", "Navigable region for a draught");
  feasible->add_option("--chart", feasible_args.chart, "Chart GeoJSON")->required();
  feasible->add_option("--draught", feasible_args.draught, "Draught (m)")->required()->check(CLI::PositiveNumber);
  feasible->add_option("--ukc", feasible_args.ukc, "Under-keel clearance fraction")->capture_default_str();
  feasible->add_option("--out", feasible_args.out, "Overlay GeoJSON (default: stdout)");

  MakeChartArgs chart_args;
  double narrow_width = 0.0;
  auto* make = app.add_subcommand("make-chart", "Synthetic channel chart");
  make->add_option("--preset", chart_args.preset, "narrowing or uniform")
      ->required()
      ->check(CLI::IsMember({"narrowing", "uniform"}));
  make->add_option("--length", chart_args.spec.length, "Channel length (m)")->capture_default_str();
  make->add_option("--wide-width", chart_args.spec.wide_width, "Deep width at the ends (m)")->capture_default_str();
  auto* narrow_opt = make->add_option("--narrow-width", narrow_width, "Deep width at the neck (m)");
  make->add_option("--narrow-depth", chart_args.spec.narrow_depth, "Deep contour depth (m)")->capture_default_str();
  make->add_option("--flank-depth", chart_args.spec.flank_depth, "Flank contour depth (m)")->capture_default_str();
  make->add_option("--flank-margin", chart_args.spec.flank_margin, "Flank width beyond the deep contour (m)")
      ->capture_default_str();
  make->add_option("--land-width", chart_args.spec.land_width, "Land strip width (m)")->capture_default_str();
  make->add_option("--origin-lat", chart_args.spec.origin_lat, "Origin latitude")->capture_default_str();
  make->add_option("--origin-lon", chart_args.spec.origin_lon, "Origin longitude")->capture_default_str();
  make->add_option("--out", chart_args.out, "Chart GeoJSON (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sim) return run_simulate(sim_args);
    if (*assess) return run_assess(assess_args);
    if (*swing) return run_swing_table(swing_args);
    if (*ais) return run_ais_stats(ais_args);
    if (*feasible) return run_chart_feasible(feasible_args);
    if (*make) {
      if (*narrow_opt) chart_args.narrow_width = narrow_width;
      return run_make_chart(chart_args);
    }
  } catch (const rule9::ProtocolError& e) {
    std::cerr << "rule9: protocol error: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const rule9::Error& e) {
    std::cerr << "rule9: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "rule9: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "rule9: internal error: " << e.what() << '\n';
    return kExitProtocol;
  }
  return kExitUsage;
}
