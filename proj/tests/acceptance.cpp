// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "rule9/automaton.hpp"
#include "rule9/chart.hpp"
#include "rule9/kinematics.hpp"
#include "rule9/maneuver.hpp"
#include "rule9/sim.hpp"
#include "rule9/situation.hpp"
#include "support.hpp"

using namespace rule9;
using nlohmann::json;
namespace ts = testsupport;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string quoted(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

Verdict scenarios() {
  Verdict o;
  const auto cfg = load_scenario(ts::data_dir() / "scenarios/restricted.cfg");
  o.require(cfg.duration == 420 && cfg.timestep == 1 && cfg.target.length == 50 && cfg.target.breadth == 9 &&
                cfg.target.draught == 5 && cfg.own.speed_kn == 2 && cfg.target.speed_kn == 7 &&
                cfg.assessment.swing_rate == 0.2 && cfg.assessment.alpha == 0.4 && cfg.assessment.tcpa_act == 180 &&
                cfg.assessment.cpa_req == 150,
            "restricted.cfg does not carry the reference parameters");
  const auto dir = ts::scratch_dir("acc_scenarios");
  struct Case {
    const char* name;
    const char* outcome;
    json trace;
  };
  for (const Case& c : {Case{"restricted", "rule9_applied", {"D1", "D2", "D3", "D4"}},
                        Case{"unrestricted", "not_applied", {"D1", "D2", "D3", "D1"}}}) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = ts::run_cli("simulate --config " + quoted(ts::data_dir() / "scenarios" / (std::string(c.name) + ".cfg")) +
                               " --out " + quoted(dir / c.name));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(r.exit_code == 0, std::string(c.name) + ": exit " + std::to_string(r.exit_code));
    o.require(r.out == std::string(c.outcome) + "\n", std::string(c.name) + ": printed " + r.out);
    const auto summary = json::parse(ts::slurp(dir / c.name / "summary.json"), nullptr, false);
    o.require(!summary.is_discarded() && summary["assessment"].is_object() && summary["assessment"]["trace"] == c.trace,
              std::string(c.name) + ": unexpected automaton trace");
    o.require(secs < 5.0, std::string(c.name) + ": took " + std::to_string(secs) + " s");
  }
  const auto narrow = load_scenario(ts::data_dir() / "scenarios/restricted.cfg");
  const auto wide = load_scenario(ts::data_dir() / "scenarios/unrestricted.cfg");
  o.require(narrow.chart.path->filename() == "narrow.geojson" && wide.chart.path->filename() == "wide.geojson",
            "scenarios do not use the bundled narrow/wide fixtures");
  return o;
}

Verdict swing_rates() {
  Verdict o;
  const auto table = builtin_turning_circles();
  o.require(table.size() == 14, "table does not have 14 rows");
  double lowest = 1e9;
  const TurningCircleRecord* argmin = nullptr;
  for (const auto& r : table) {
    const double rate = swing_rate(r.turn_radius).deg_per_m();
    o.require(std::abs(rate - 360.0 / (2.0 * M_PI * r.turn_radius)) < 1e-12, "rate disagrees with 360/(2 pi r)");
    if (rate < lowest) lowest = rate, argmin = &r;
  }
  o.require(std::abs(lowest - 0.07734) <= 1e-4, "minimum is " + std::to_string(lowest));
  o.require(argmin && argmin->vessel_type == "bulk carrier" && argmin->turn_radius == 740.8,
            "minimum is not the r = 740.8 bulk carrier");
  o.require(lowest >= 0.07 && lowest <= 0.12, "minimum outside [0.07, 0.12]");
  const auto cli = json::parse(ts::run_cli("swing-table").out, nullptr, false);
  o.require(!cli.is_discarded() && std::abs(cli["minimum"]["swing_rate"].get<double>() - lowest) < 1e-12,
            "swing-table reports a different minimum");
  o.detail = o.pass ? "minimum " + std::to_string(lowest) + " deg/m (bulk carrier, r = 740.8 m)" : o.detail;
  return o;
}

Pose euler_arc(Pose start, double rate, double length, bool cw) {
  const double dl = 1e-3;
  const double k = deg2rad(rate) * (cw ? 1.0 : -1.0);
  double n = start.position.north(), e = start.position.east();
  double cn = std::cos(start.heading.radians()), ce = std::sin(start.heading.radians());
  const double c = std::cos(k * dl), s = std::sin(k * dl);
  const auto steps = static_cast<long>(std::llround(length / dl));
  for (long i = 0; i < steps; ++i) {
    n += dl * cn;
    e += dl * ce;
    const double cn2 = cn * c - ce * s;
    ce = ce * c + cn * s;
    cn = cn2;
  }
  return {{n, e}, Heading(start.heading.degrees() + rad2deg(k * static_cast<double>(steps) * dl))};
}

Verdict arcs() {
  Verdict o;
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(0, 1);
  double worst_pos = 0.0, worst_hdg = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double rate = 0.05 + 0.95 * u(rng);
    const double length = (720.0 / rate) * u(rng);
    const Pose start{{-1000 + 2000 * u(rng), -1000 + 2000 * u(rng)}, Heading(360 * u(rng))};
    const bool cw = u(rng) < 0.5;
    const Pose exact =
        project_arc(start, SwingRate(rate), length, cw ? TurnDirection::Clockwise : TurnDirection::CounterClockwise);
    const Pose oracle = euler_arc(start, rate, length, cw);
    worst_pos = std::max(worst_pos, distance(exact.position, oracle.position));
    worst_hdg = std::max(worst_hdg, std::abs(angle_difference(exact.heading, oracle.heading)));
    const SwingRate sr(rate);
    const Pose closed = project_arc(start, sr, 360.0 / rate, TurnDirection::Clockwise);
    o.require(distance(closed.position, start.position) <= 1e-6 * sr.radius(), "full circle does not close");
  }
  o.require(worst_pos <= 0.01, "position error " + std::to_string(worst_pos));
  o.require(worst_hdg <= 0.001, "heading error " + std::to_string(worst_hdg));
  const Pose worked = project_arc({{0, 0}, Heading(0)}, SwingRate(0.2), 450.0, TurnDirection::Clockwise);
  o.require(std::abs(worked.position.north() - 286.479) <= 1e-3 && std::abs(worked.position.east() - 286.479) <= 1e-3 &&
                std::abs(worked.heading.degrees() - 90.0) < 1e-9,
            "worked case off");
  if (o.pass) o.detail = "max deviation " + std::to_string(worst_pos) + " m / " + std::to_string(worst_hdg) + " deg";
  return o;
}

Verdict cpas() {
  Verdict o;
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> pos(-2000, 2000), vel(-8, 8);
  double worst_d = 0.0, worst_t = 0.0;
  int done = 0;
  while (done < 1000) {
    auto make = [&] {
      const double vn = vel(rng), ve = vel(rng);
      return VesselState({pos(rng), pos(rng)}, std::hypot(vn, ve), Heading(rad2deg(std::atan2(ve, vn))));
    };
    const VesselState a = make(), b = make();
    if (distance(a.velocity(), b.velocity()) < 0.1) continue;
    const CpaResult r = cpa(a, b);
    const double t_end = 2.0 * r.tcpa + 100.0;
    double best_t = 0.0, best_d = distance(a.position(), b.position());
    const NedPoint dp = b.position() - a.position(), dv = b.velocity() - a.velocity();
    for (long k = 1; k * 0.01 <= t_end; ++k) {
      const double t = k * 0.01;
      const double d = std::hypot(dp.north() + dv.north() * t, dp.east() + dv.east() * t);
      if (d < best_d) best_d = d, best_t = t;
    }
    worst_d = std::max(worst_d, std::abs(best_d - r.dcpa));
    worst_t = std::max(worst_t, std::abs(best_t - r.tcpa));
    ++done;
  }
  o.require(worst_d <= 0.1, "dcpa error " + std::to_string(worst_d));
  o.require(worst_t <= 0.05, "tcpa error " + std::to_string(worst_t));
  if (o.pass) o.detail = "max deviation " + std::to_string(worst_d) + " m / " + std::to_string(worst_t) + " s";
  return o;
}

Verdict automaton_suite() {
  Verdict o;
  const Dfa g = build_g_d();
  const std::map<std::pair<std::string, std::string>, std::string> fig{
      {{"D1", "not_d1"}, "D1"}, {{"D1", "d1"}, "D2"}, {{"D2", "d2"}, "D4"},
      {{"D2", "not_d2"}, "D3"}, {{"D3", "d3"}, "D4"}, {{"D3", "not_d3"}, "D1"},
  };
  o.require(g.transitions() == fig, "transition set differs");
  int defined = 0;
  for (const auto& s : g.states()) {
    for (const auto& e : g.events()) {
      try {
        g.step(s, e);
        ++defined;
      } catch (const UndefinedTransition&) {
      }
    }
  }
  o.require(defined == 6, std::to_string(defined) + " defined edges");
  o.require(g.initial() == "D1" && g.marked() == std::set<std::string>{"D1", "D4"}, "initial/marked differ");
  o.require(is_nonblocking(g), "G_d reported blocking");
  using Key = std::pair<std::string, std::string>;
  const std::vector<std::vector<Key>> strand_d3{
      {{"D3", "d3"}, {"D3", "not_d3"}},
      {{"D3", "d3"}, {"D3", "not_d3"}, {"D2", "d2"}},
      {{"D3", "d3"}, {"D3", "not_d3"}, {"D1", "not_d1"}},
  };
  for (const auto& removed : strand_d3) o.require(!is_nonblocking(g.without(removed)), "mutant not detected");
  const auto empty = g.run({});
  o.require(empty.final_state == "D1" && empty.accepted, "empty sequence not accepted at D1");
  return o;
}

Verdict ellipses() {
  Verdict o;
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> u(0, 1);
  int compared = 0, skipped = 0, blocked = 0;
  while (compared < 1000) {
    const Ring ring = ts::random_convex(rng, {0, 0}, 200.0 + 200.0 * u(rng));
    const double a = 10.0 + 120.0 * u(rng);
    const double b = a * (0.1 + 0.9 * u(rng));
    const Ellipse e({-150 + 300 * u(rng), -150 + 300 * u(rng)}, a, b, Heading(360 * u(rng)));
    if (std::abs(ts::sampled_clearance(e, ring)) < 1e-6 * a) {
      ++skipped;
      continue;
    }
    const bool analytic = ellipse_intersects_region_boundary(e, std::vector<Polygon>{Polygon(ring)});
    o.require(analytic == ts::sampled_ellipse_blocked(e, ring), "disagreement at case " + std::to_string(compared));
    blocked += analytic ? 1 : 0;
    ++compared;
  }
  if (o.pass) {
    o.detail = std::to_string(compared) + " cases (" + std::to_string(blocked) + " blocked, " +
               std::to_string(skipped) + " grazing skipped)";
  }
  return o;
}

Verdict duty_inversion() {
  Verdict o;
  const SeaChart chart = load_chart(ts::data_dir() / "charts/narrow.geojson");
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> u(0, 1);
  const char* statuses[] = {"restricted manoeuvrability", "under way using engine", "constrained by draught",
                            "engaged in fishing"};
  int applied = 0, status_cases = 0, status_skipped = 0, geometry_runs = 0;
  for (int i = 0; i < 500; ++i) {
    const VesselState own({-400 + 800 * u(rng), -1500 + 3000 * u(rng)}, 0.5 + 5 * u(rng), Heading(360 * u(rng)));
    TargetAttributes t;
    t.state = VesselState({-120 + 240 * u(rng), -1800 + 3600 * u(rng)}, 1.0 + 6 * u(rng),
                          Heading(u(rng) < 0.7 ? (u(rng) < 0.5 ? 90.0 : 270.0) + 20 * (u(rng) - 0.5) : 360 * u(rng)));
    t.length = 20 + 80 * u(rng);
    t.breadth = *t.length / (4.0 + 4.0 * u(rng));
    t.draught = 0.5 + 8.0 * u(rng);
    if (u(rng) < 0.4) {
      t.has_transponder = true;
      t.nav_status = statuses[rng() % 4];
    }
    AssessmentConfig c;
    c.swing_rate = u(rng) < 0.5 ? std::optional<double>(0.2) : std::nullopt;
    c.maneuver.decision_step = 20.0;
    const SituationAssessment a = assess(own, t, chart, c);
    const bool ends_d4 = a.trace.back() == gd::D4;
    const bool inverted = a.final_duty_own == opposite(a.initial_duty_own);
    o.require(a.rule9_applied == ends_d4 && ends_d4 == inverted, "invariant broken at encounter " + std::to_string(i));
    o.require(a.rule9_applied == (a.final_duty_target == opposite(a.initial_duty_target)),
              "target duty broken at encounter " + std::to_string(i));
    applied += a.rule9_applied ? 1 : 0;
    geometry_runs += a.maneuver ? 1 : 0;
    if (event_d2(t) == AssessmentEvent::D2) {
      ++status_cases;
      status_skipped += a.maneuver ? 0 : 1;
    }
  }
  o.require(status_cases > 0 && status_skipped == status_cases, "geometry ran for a status-restricted target");
  o.require(applied > 0 && applied < 500 && geometry_runs > 0, "fleet does not exercise both verdicts");
  if (o.pass) {
    o.detail = std::to_string(applied) + "/500 applied, " + std::to_string(geometry_runs) + " geometric, " +
               std::to_string(status_skipped) + "/" + std::to_string(status_cases) + " status shortcuts";
  }
  return o;
}

Verdict monotonicity() {
  Verdict o;
  ScenarioConfig cfg = load_scenario(ts::data_dir() / "scenarios/restricted.cfg");
  std::vector<std::pair<double, rule9::Outcome>> seen;
  for (double d = 3.0; d <= 5.0 + 1e-9; d += 0.25) {
    cfg.target.draught = d;
    seen.emplace_back(d, run_scenario(cfg).outcome);
  }
  o.require(seen.front().second == rule9::Outcome::NotApplied, "3.0 m draught is restricted");
  o.require(seen.back().second == rule9::Outcome::Rule9Applied, "5.0 m draught is unrestricted");
  int flips = 0;
  for (std::size_t i = 1; i < seen.size(); ++i) flips += seen[i].second != seen[i - 1].second ? 1 : 0;
  o.require(flips == 1, std::to_string(flips) + " verdict changes between 3.0 and 5.0 m");
  return o;
}

Verdict determinism() {
  Verdict o;
  const auto dir = ts::scratch_dir("acc_determinism");
  for (const char* name : {"restricted", "unrestricted", "no_risk"}) {
    for (const char* run : {"1", "2"}) {
      const auto r = ts::run_cli("simulate --config " + quoted(ts::data_dir() / "scenarios" / (std::string(name) + ".cfg")) +
                                 " --out " + quoted(dir / name / run));
      o.require(r.exit_code == 0, std::string(name) + " failed to run");
    }
    for (const char* f : {"trace.csv", "overlay.geojson", "summary.json"}) {
      const std::string a = ts::slurp(dir / name / "1" / f);
      o.require(!a.empty() && a == ts::slurp(dir / name / "2" / f), std::string(name) + "/" + f + " differs");
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"scenario reproduction", scenarios},
      {"turning-circle swing rates", swing_rates},
      {"arc projection oracle", arcs},
      {"CPA oracle", cpas},
      {"assessment automaton", automaton_suite},
      {"ellipse intersection oracle", ellipses},
      {"duty inversion invariant", duty_inversion},
      {"draught monotonicity", monotonicity},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
