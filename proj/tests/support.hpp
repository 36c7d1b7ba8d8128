#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rule9/geo.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return RULE9_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return RULE9_FIXTURE_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rule9_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

struct CommandResult {
  int exit_code;
  std::string out;
};

#ifdef RULE9_CLI
// Runs the CLI with stderr folded into the captured output.
inline CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + RULE9_CLI + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}
#endif

// Random convex polygon: sorted angles around a centre, radius jittered
// only through the angle spacing so convexity holds.
inline rule9::Ring random_convex(std::mt19937_64& rng, rule9::NedPoint centre, double radius, int min_n = 3,
                                 int max_n = 9) {
  std::uniform_int_distribution<int> count(min_n, max_n);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const int n = count(rng);
  std::vector<double> angles;
  while (static_cast<int>(angles.size()) < n) {
    const double a = angle(rng);
    bool ok = true;
    for (double b : angles) ok = ok && std::abs(std::remainder(a - b, 2.0 * M_PI)) > 0.05;
    if (ok) angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  rule9::Ring ring;
  for (double a : angles) ring.emplace_back(centre.north() + radius * std::cos(a), centre.east() + radius * std::sin(a));
  return ring;
}

// Even-odd ray casting along +east, written independently of the library.
inline bool ray_cast(const rule9::Ring& ring, double n, double e) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const double ni = ring[i].north(), ei = ring[i].east();
    const double nj = ring[j].north(), ej = ring[j].east();
    if ((ni > n) != (nj > n)) {
      const double cross_e = ei + (n - ni) * (ej - ei) / (nj - ni);
      if (e < cross_e) inside = !inside;
    }
  }
  return inside;
}

// Dense-sampling ellipse oracle: boundary samples tested against the
// region by ray casting, plus the centre-outside rule. Returns true when
// the ellipse is blocked.
inline bool sampled_ellipse_blocked(const rule9::Ellipse& e, const rule9::Ring& ring, int samples = 3600) {
  if (!ray_cast(ring, e.center().north(), e.center().east())) return true;
  const double c = std::cos(e.orientation().radians()), s = std::sin(e.orientation().radians());
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * M_PI * k / samples;
    const double f = e.semi_major() * std::cos(t), g = e.semi_minor() * std::sin(t);
    if (!ray_cast(ring, e.center().north() + f * c - g * s, e.center().east() + f * s + g * c)) return true;
  }
  return false;
}

// Signed clearance between an ellipse boundary and a convex ring, in
// meters, by dense sampling: positive inside with margin, negative when
// some boundary point is outside.
inline double sampled_clearance(const rule9::Ellipse& e, const rule9::Ring& ring, int samples = 3600) {
  auto edge_distance = [&](double n, double east) {
    double best = 1e300;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % ring.size()];
      const double dn = b.north() - a.north(), de = b.east() - a.east();
      const double t = std::clamp(((n - a.north()) * dn + (east - a.east()) * de) / (dn * dn + de * de), 0.0, 1.0);
      best = std::min(best, std::hypot(n - a.north() - t * dn, east - a.east() - t * de));
    }
    return best;
  };
  const double c = std::cos(e.orientation().radians()), s = std::sin(e.orientation().radians());
  double clearance = 1e300;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * M_PI * k / samples;
    const double f = e.semi_major() * std::cos(t), g = e.semi_minor() * std::sin(t);
    const double n = e.center().north() + f * c - g * s, east = e.center().east() + f * s + g * c;
    const double d = edge_distance(n, east);
    clearance = std::min(clearance, ray_cast(ring, n, east) ? d : -d);
  }
  return clearance;
}

}  // namespace testsupport
