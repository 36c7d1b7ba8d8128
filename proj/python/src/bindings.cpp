#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rule9/ais.hpp"
#include "rule9/automaton.hpp"
#include "rule9/chart.hpp"
#include "rule9/errors.hpp"
#include "rule9/kinematics.hpp"
#include "rule9/maneuver.hpp"
#include "rule9/records.hpp"
#include "rule9/sim.hpp"
#include "rule9/situation.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Records cross the boundary as plain dicts, round-tripped through JSON text.
json to_json(const py::handle& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return json::parse(text);
}

py::object from_json(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

rule9::VesselState vessel(const py::dict& d) { return rule9::records::vessel_from_json(to_json(d)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rule 9 applicability assessment core";

  auto base = py::register_exception<rule9::Error>(m, "Rule9Error", PyExc_ValueError);
  py::register_exception<rule9::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<rule9::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<rule9::IoError>(m, "IoError", base.ptr());
  py::register_exception<rule9::ProtocolError>(m, "ProtocolError", base.ptr());

  m.attr("KNOT") = rule9::kKnot;

  m.def("swing_rate", [](double radius) { return rule9::swing_rate(radius).deg_per_m(); }, py::arg("turn_radius"),
        "Heading change per meter (deg/m) on a circle of the given radius.");
  m.def("scaled_swing_rate",
        [](double rate, double alpha) { return rule9::scaled_swing_rate(rule9::SwingRate(rate), alpha).deg_per_m(); },
        py::arg("rate"), py::arg("alpha"));
  m.def("estimate_swing_rate",
        [](double length) { return rule9::estimate_swing_rate(length, rule9::builtin_turning_circles()).deg_per_m(); },
        py::arg("length"), "Unscaled rate of the built-in record nearest in length.");
  m.def("turning_circles", [] {
    py::list rows;
    for (const auto& r : rule9::builtin_turning_circles()) {
      py::dict d;
      d["type"] = r.vessel_type;
      d["length"] = r.length;
      d["breadth"] = r.breadth;
      d["rudder"] = r.rudder;
      d["max_rudder"] = r.max_rudder;
      d["turn_radius"] = r.turn_radius;
      rows.append(d);
    }
    return rows;
  });

  m.def(
      "project_arc",
      [](double north, double east, double heading, double rate, double arc_length, bool clockwise) {
        const rule9::Pose p = rule9::project_arc(
            {{north, east}, rule9::Heading(heading)}, rule9::SwingRate(rate), arc_length,
            clockwise ? rule9::TurnDirection::Clockwise : rule9::TurnDirection::CounterClockwise);
        return py::make_tuple(p.position.north(), p.position.east(), p.heading.degrees());
      },
      py::arg("north"), py::arg("east"), py::arg("heading"), py::arg("rate"), py::arg("arc_length"),
      py::arg("clockwise") = true, "Pose (north, east, heading) after a constant-rate turn.");

  m.def(
      "cpa",
      [](const py::dict& own, const py::dict& target) {
        const rule9::CpaResult r = rule9::cpa(vessel(own), vessel(target));
        py::dict d;
        d["tcpa"] = r.tcpa;
        d["dcpa"] = r.dcpa;
        d["own_at_cpa"] = py::make_tuple(r.own_at_cpa.north(), r.own_at_cpa.east());
        d["target_at_cpa"] = py::make_tuple(r.target_at_cpa.north(), r.target_at_cpa.east());
        return d;
      },
      py::arg("own"), py::arg("target"));
  m.def(
      "collision_risk",
      [](const py::dict& own, const py::dict& target, double cpa_req, double tcpa_act) {
        return rule9::collision_risk(vessel(own), vessel(target), cpa_req, tcpa_act);
      },
      py::arg("own"), py::arg("target"), py::arg("cpa_req") = 150.0, py::arg("tcpa_act") = 180.0);
  m.def(
      "classify_encounter",
      [](const py::dict& own, const py::dict& target) {
        const rule9::Encounter e = rule9::classify_encounter(vessel(own), vessel(target));
        return py::make_tuple(std::string(rule9::to_string(e.kind)), e.relative_bearing);
      },
      py::arg("own"), py::arg("target"));

  m.def(
      "run_g_d",
      [](const std::vector<std::string>& events) {
        const rule9::RunResult r = rule9::g_d().run(events);
        py::dict d;
        d["final_state"] = r.final_state;
        d["accepted"] = r.accepted;
        d["trace"] = r.trace;
        return d;
      },
      py::arg("events"), "Feeds events to the assessment automaton from D1.");
  m.def("g_d_is_nonblocking", [] { return rule9::is_nonblocking(rule9::g_d()); });
  m.def("g_d_dot", [] { return rule9::g_d().to_dot("G_d"); });

  m.def(
      "assess",
      [](const std::string& chart, const py::dict& own, const py::dict& target, const py::object& params) {
        const rule9::SeaChart c = rule9::load_chart(chart);
        const rule9::AssessmentConfig config =
            params.is_none() ? rule9::AssessmentConfig{} : rule9::records::config_from_json(to_json(params));
        const auto t = rule9::records::target_from_json(to_json(target));
        return from_json(rule9::records::to_json(rule9::assess(vessel(own), t, c, config)));
      },
      py::arg("chart"), py::arg("own"), py::arg("target"), py::arg("params") = py::none(),
      "Assessment record for one snapshot, as returned by `rule9 assess`.");

  m.def(
      "simulate",
      [](const std::string& config, const std::string& out_dir) {
        const rule9::SimulationTrace trace = rule9::run_scenario(rule9::load_scenario(config));
        if (!out_dir.empty()) rule9::write_trace(trace, out_dir);
        return from_json(rule9::trace_summary(trace));
      },
      py::arg("config"), py::arg("out_dir") = "", "Runs a scenario file; returns the summary record.");

  m.def(
      "feasible_overlay",
      [](const std::string& chart, double draught, double ukc) {
        const rule9::SeaChart c = rule9::load_chart(chart);
        return from_json(rule9::feasible_overlay(rule9::feasible_region(c, draught, ukc), c.origin()));
      },
      py::arg("chart"), py::arg("draught"), py::arg("ukc") = rule9::kDefaultUkcFraction);

  m.def(
      "ais_stats",
      [](const std::string& csv, const std::optional<std::vector<double>>& region) {
        const auto parsed = rule9::load_ais_csv(csv);
        if (region && region->size() != 4) throw rule9::ValidationError("region needs 4 bounds");
        const rule9::RegionFilter f =
            region ? rule9::RegionFilter((*region)[0], (*region)[1], (*region)[2], (*region)[3]) : rule9::aalborg_region();
        const auto kept = rule9::filter_region(parsed.records, f);
        json doc = rule9::stats_to_json(rule9::dimension_stats(kept));
        doc["records"] = parsed.records.size();
        doc["dropped"] = parsed.dropped;
        doc["in_region"] = kept.size();
        return from_json(doc);
      },
      py::arg("csv"), py::arg("region") = py::none());
}
