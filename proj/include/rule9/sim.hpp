#pragma once

#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rule9/chart.hpp"
#include "rule9/kinematics.hpp"
#include "rule9/situation.hpp"

namespace rule9 {

struct OwnshipConfig {
  Pose start;
  double speed_kn = 2.0;
  double draught = 0.5;
  /// Optional waypoints; when given the ship starts at the first one and
  /// steers for the second.
  std::vector<NedPoint> route;
};

struct TargetConfig {
  Pose start;
  double speed_kn = 7.0;
  double length = 50.0;
  double breadth = 9.0;
  double draught = 5.0;
  std::optional<std::string> nav_status;
  std::string vessel_type = "vessel";
  bool has_transponder = false;
};

struct ChartSource {
  std::optional<std::filesystem::path> path;
  std::optional<ChannelSpec> synthetic;
};

/// Scenario parameters. Defaults reproduce the reference simulation
/// settings (7 min at 1 s, 50 x 9 x 5 m target at 7 kn, ownship at 2 kn,
/// swing rate 0.2 deg/m scaled by 0.4, TCPA_act 3 min, CPA_req 150 m).
struct ScenarioConfig {
  double duration = 420.0;
  double timestep = 1.0;
  ChartSource chart;
  OwnshipConfig own;
  TargetConfig target;
  AssessmentConfig assessment = default_assessment();
  /// Seconds between re-assessments while risk persists; 0 latches the
  /// first verdict.
  double reassess_interval = 0.0;

  static AssessmentConfig default_assessment();
  void validate() const;
};

/// INI-style scenario file; unknown sections or keys are errors. A
/// relative chart path resolves against the file's directory.
ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

enum class Outcome { Rule9Applied, NotApplied, NoRisk };

std::string_view to_string(Outcome o);

struct TraceStep {
  double t;
  VesselState own;
  VesselState target;
  double tcpa;
  double dcpa;
  bool risk;
  std::optional<SituationAssessment> assessment;
};

struct CpaMarker {
  double time;  // absolute scenario time of closest approach
  NedPoint own;
  NedPoint target;
};

/// Inputs that reproduce an assessment outside the simulator.
struct Snapshot {
  VesselState own;
  TargetAttributes target;
  AssessmentConfig params;
};

struct SimulationTrace {
  ScenarioConfig config;
  std::shared_ptr<const SeaChart> chart;
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::NoRisk;
  std::optional<double> trigger_time;
  std::optional<CpaMarker> cpa_marker;
  std::optional<Snapshot> trigger_snapshot;
  std::optional<FeasibleRegion> target_feasible;

  const SituationAssessment* first_assessment() const;
};

std::shared_ptr<const SeaChart> resolve_chart(const ChartSource& source);

SimulationTrace run_scenario(const ScenarioConfig& config);

/// Step table, fixed column order.
std::string trace_csv(const SimulationTrace& trace);
nlohmann::json trace_overlay(const SimulationTrace& trace);
nlohmann::json trace_summary(const SimulationTrace& trace);
nlohmann::json snapshot_to_json(const Snapshot& s);

/// Writes trace.csv, overlay.geojson and summary.json into `out_dir`.
void write_trace(const SimulationTrace& trace, const std::filesystem::path& out_dir);

}  // namespace rule9
