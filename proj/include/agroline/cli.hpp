/*
 * Copyright 2026 The Agroline Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AGROLINE_CLI_HPP
#define AGROLINE_CLI_HPP

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "agroline/export.hpp"
#include "agroline/planner.hpp"
#include "agroline/site.hpp"

namespace agroline::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kConstraintFailure = 2,
  kMissingSubdivision = 3,
};

struct CliConfig {
  std::string subcommand;
  std::string terrain_path;
  std::string plot_path;
  std::optional<std::string> eplot_path;
  std::string out_dir = ".";
  PlanParams params;
  std::size_t contours = 10;
  double waypoint_step = 1.0;
  bool coefficients = false;
  std::optional<std::string> save_dir;  // serve only
  std::string host = "127.0.0.1";
  int port = 8080;
};

using ServeFn = std::function<int(const CliConfig&, std::ostream&, std::ostream&)>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::EmptyInput, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::Validation, "cannot write " + path.string());
}

/// Port from AGROLINE_PORT, else 8080.
inline int default_port() {
  if (const char* env = std::getenv("AGROLINE_PORT")) {
    try {
      std::size_t used = 0;
      const int p = std::stoi(env, &used);
      if (used == std::string(env).size() && p >= 0 && p <= 65535) return p;
    } catch (const std::exception&) {
    }
  }
  return 8080;
}

namespace detail {

inline Site load(const CliConfig& c, std::ostream& out) {
  Site site = load_site(read_file(c.terrain_path), read_file(c.plot_path), c.params);
  if (c.coefficients) out << format_coefficients(site.surface);
  return site;
}

inline std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v + 0.0);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

}  // namespace detail

inline int cmd_check(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Site site = detail::load(c, out);
    const Bounds& b = site.terrain.bounds;
    out << "terrain: " << site.terrain.points.size() << " points, " << site.terrain.runs().size()
        << " level curves\n";
    out << "bounds: x " << detail::fmt(b.xmin) << " .. " << detail::fmt(b.xmax) << ", y "
        << detail::fmt(b.ymin) << " .. " << detail::fmt(b.ymax) << "\n";
    out << "plot: " << site.plot.size() << " vertices, area " << detail::fmt(site.plot.area())
        << " m2\n";
    out << "H: " << detail::fmt(site.extremes.H, 3) << "\n";
    out << "L: " << detail::fmt(site.extremes.L, 3) << "\n";
    out << (site.convex ? "convex" : "concave") << "\n";
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int cmd_plan(const CliConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<Site> loaded;
  try {
    c.params.validate();
    loaded.emplace(detail::load(c, out));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const Site& site = *loaded;

  std::optional<SubdivisionPairs> pairs;
  try {
    if (c.eplot_path) pairs = parse_eplot(read_file(*c.eplot_path), site.plot);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!site.convex && !pairs) {
    err << "error: the plot is concave and needs subdivision pairs; choose them with "
           "`agroline serve` and pass the saved file with --eplot\n";
    return kMissingSubdivision;
  }

  std::optional<CoveragePlan> plan;
  try {
    plan = plan_plot(site.plot, site.surface, pairs, c.params);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    const RenderScene scene =
        scene_from_plan(site.terrain, site.surface, site.plot, &*plan, c.contours, c.params);
    write_file(dir / "plan.svg", write_svg(scene));
    write_file(dir / "plan.geojson", write_geojson(*plan));
    write_file(dir / "waypoints.csv", write_waypoints_csv(*plan, c.waypoint_step));
    write_file(dir / "report.txt", write_report(*plan, c.params));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const Diagnostics& d = plan->diagnostics;
  out << "lines: " << plan->line_count() << "\n";
  for (std::size_t i = 0; i < d.conditions.size(); ++i) {
    out << "(" << i + 1 << ") " << kConditionNames[i] << ": "
        << (d.conditions[i] ? "PASS" : "FAIL") << "\n";
  }
  for (const std::string& n : d.notes) out << n << "\n";
  out << "wrote plan.svg, plan.geojson, waypoints.csv, report.txt to " << c.out_dir << "\n";
  return d.all_pass() ? kOk : kConstraintFailure;
}

/// Terrain, contours and plot without planning.
inline int cmd_render(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Site site = detail::load(c, out);
    const std::filesystem::path dir(c.out_dir);
    std::filesystem::create_directories(dir);
    const RenderScene scene =
        scene_from_plan(site.terrain, site.surface, site.plot, nullptr, c.contours, c.params);
    write_file(dir / "scene.svg", write_svg(scene));
    out << "wrote scene.svg to " << c.out_dir << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const ServeFn& serve = {}) {
  CliConfig c;
  c.port = default_port();
  CLI::App app{"agroline: curved plantation lines for sloped plots"};
  app.require_subcommand(1);

  auto add_params = [&](CLI::App* sub) {
    PlanParams& p = c.params;
    sub->add_option("--spacing", p.spacing, "groove spacing, m")->capture_default_str();
    sub->add_option("--min-radius", p.min_radius, "minimum turning radius, m")
        ->capture_default_str();
    sub->add_option("--max-slope", p.max_slope_deg, "maximum slope, degrees")
        ->capture_default_str();
    sub->add_option("--max-step", p.max_step, "boundary sampling step, m")->capture_default_str();
    sub->add_option("--de0", p.de0, "initial prototype level offset, m")->capture_default_str();
    sub->add_option("--de-floor", p.de_floor, "smallest level offset, m")->capture_default_str();
    sub->add_option("--max-iters", p.max_iters, "optimizer iteration cap")->capture_default_str();
    sub->add_option("--tie-tolerance", p.tie_tolerance, "extreme tie tolerance, m")
        ->capture_default_str();
    sub->add_option("--drainage-tolerance", p.drainage_tolerance, "drainage tolerance, m")
        ->capture_default_str();
    sub->add_option("--flat-threshold", p.flat_threshold, "flat relief threshold, m")
        ->capture_default_str();
    sub->add_option("--slope-step", p.slope_step, "slope sampling step, m")->capture_default_str();
    sub->add_option("--extremity-gain", p.extremity_gain, "boundary travel per metre of de")
        ->capture_default_str();
    sub->add_option("--min-piece", p.min_piece, "shortest kept line piece, m")
        ->capture_default_str();
  };
  auto add_files = [&](CLI::App* sub) {
    sub->add_option("terrain", c.terrain_path, "terrain level-curve file")->required();
    sub->add_option("plot", c.plot_path, "plot polygon file")->required();
    sub->add_flag("--coefficients", c.coefficients, "print the fitted coefficient matrix");
  };

  CLI::App* plan = app.add_subcommand("plan", "plan lines and write plan.svg, plan.geojson, "
                                              "waypoints.csv and report.txt");
  add_files(plan);
  add_params(plan);
  plan->add_option("--eplot", c.eplot_path, "saved subdivision pairs");
  plan->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  plan->add_option("--contours", c.contours, "polynomial contour levels")->capture_default_str();
  plan->add_option("--waypoint-step", c.waypoint_step, "waypoint spacing, m")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* check = app.add_subcommand("check", "validate inputs and print a summary");
  add_files(check);
  add_params(check);

  CLI::App* render = app.add_subcommand("render", "draw terrain and plot to scene.svg");
  add_files(render);
  add_params(render);
  render->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  render->add_option("--contours", c.contours, "polynomial contour levels")
      ->capture_default_str();

  CLI::App* srv = app.add_subcommand("serve", "run the subdivision session server");
  add_params(srv);
  srv->add_option("--port", c.port, "TCP port, 0 for any (default AGROLINE_PORT or 8080)")
      ->check(CLI::Range(0, 65535));
  srv->add_option("--host", c.host, "bind address")->capture_default_str();
  srv->add_option("--out", c.save_dir, "directory for saved eplot files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kOk : kInputError;
  }

  if (plan->parsed()) return cmd_plan(c, out, err);
  if (check->parsed()) return cmd_check(c, out, err);
  if (render->parsed()) return cmd_render(c, out, err);
  if (!serve) {
    err << "error: serve is not available in this build\n";
    return kInputError;
  }
  try {
    c.params.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return serve(c, out, err);
}

}  // namespace agroline::cli

#endif  // AGROLINE_CLI_HPP
