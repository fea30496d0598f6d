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

#ifndef AGROLINE_EXPORT_HPP
#define AGROLINE_EXPORT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "agroline/ingest.hpp"
#include "agroline/planner.hpp"
#include "json.hpp"

namespace agroline {

inline constexpr double kFlattenTolerance = 0.1;  // m

/// One drawable item: polylines (several parts for a clipped line), a closed
/// ring, or a set of markers.
struct Geometry {
  enum class Kind { Polyline, Ring, Markers };
  Kind kind = Kind::Polyline;
  std::vector<std::vector<Vec2>> parts;
  std::string state;  // "pass", "fail" or empty
};

struct Layer {
  std::string name;
  std::vector<Geometry> items;
  std::string style;
};

struct RenderScene {
  std::vector<Layer> layers;
  Bounds viewport;

  const Layer* find(const std::string& name) const {
    for (const Layer& l : layers) {
      if (l.name == name) return &l;
    }
    return nullptr;
  }
};

inline std::vector<Vec2> flatten_curve(const ApwCurve& curve, double tol = kFlattenTolerance) {
  std::vector<Vec2> out;
  for (const Arc& a : curve.arcs()) {
    std::vector<Vec2> pts = flatten(a, tol);
    out.insert(out.end(), pts.begin() + (out.empty() ? 0 : 1), pts.end());
  }
  return out;
}

namespace detail {

struct GridEdge {
  std::size_t i, j;
  int dir;  // 0 along x from node (i, j), 1 along y
  auto operator<=>(const GridEdge&) const = default;
};

inline std::vector<std::vector<Vec2>> chain_segments(
    const std::vector<std::pair<GridEdge, GridEdge>>& segs, const std::map<GridEdge, Vec2>& at) {
  std::map<GridEdge, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    touching[segs[s].first].push_back(s);
    touching[segs[s].second].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Vec2>> lines;
  auto extend = [&](std::vector<GridEdge>& chain) {
    for (;;) {
      bool grown = false;
      for (std::size_t s : touching[chain.back()]) {
        if (used[s]) continue;
        used[s] = true;
        chain.push_back(segs[s].first == chain.back() ? segs[s].second : segs[s].first);
        grown = true;
        break;
      }
      if (!grown) return;
    }
  };
  // Open chains start at an edge touched once; closed loops afterwards.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (used[s]) continue;
      if (pass == 0 && touching[segs[s].first].size() != 1 &&
          touching[segs[s].second].size() != 1) {
        continue;
      }
      used[s] = true;
      std::vector<GridEdge> chain{segs[s].first, segs[s].second};
      if (touching[chain.front()].size() != 1) std::swap(chain.front(), chain.back());
      extend(chain);
      std::vector<Vec2> line;
      for (const GridEdge& e : chain) line.push_back(at.at(e));
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

}  // namespace detail

/// Marching squares for one level over an nx by ny cell grid.
inline std::vector<std::vector<Vec2>> contour_lines(const PolynomialSurface& surface,
                                                    const Bounds& box, double level,
                                                    std::size_t nx = 200, std::size_t ny = 200) {
  const double dx = box.width() / static_cast<double>(nx);
  const double dy = box.height() / static_cast<double>(ny);
  auto node = [&](std::size_t i, std::size_t j) {
    return Vec2{box.xmin + dx * static_cast<double>(i), box.ymin + dy * static_cast<double>(j)};
  };
  std::vector<double> z((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) z[j * (nx + 1) + i] = surface(node(i, j)) - level;
  }
  auto val = [&](std::size_t i, std::size_t j) { return z[j * (nx + 1) + i]; };
  auto above = [&](std::size_t i, std::size_t j) { return val(i, j) >= 0.0; };

  std::map<detail::GridEdge, Vec2> at;
  auto cross_point = [&](detail::GridEdge e) {
    auto it = at.find(e);
    if (it != at.end()) return;
    const std::size_t i2 = e.dir == 0 ? e.i + 1 : e.i;
    const std::size_t j2 = e.dir == 0 ? e.j : e.j + 1;
    const double a = val(e.i, e.j);
    const double b = val(i2, j2);
    const double t = a / (a - b);
    at[e] = node(e.i, e.j) + (node(i2, j2) - node(e.i, e.j)) * t;
  };

  std::vector<std::pair<detail::GridEdge, detail::GridEdge>> segs;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      // Cell edges: bottom, right, top, left.
      const std::array<detail::GridEdge, 4> edges{detail::GridEdge{i, j, 0}, {i + 1, j, 1},
                                                  {i, j + 1, 0}, {i, j, 1}};
      const int code = (above(i, j) ? 1 : 0) | (above(i + 1, j) ? 2 : 0) |
                       (above(i + 1, j + 1) ? 4 : 0) | (above(i, j + 1) ? 8 : 0);
      std::vector<std::pair<int, int>> pairs;
      switch (code) {
        case 1: case 14: pairs = {{3, 0}}; break;
        case 2: case 13: pairs = {{0, 1}}; break;
        case 3: case 12: pairs = {{3, 1}}; break;
        case 4: case 11: pairs = {{1, 2}}; break;
        case 6: case 9: pairs = {{0, 2}}; break;
        case 7: case 8: pairs = {{3, 2}}; break;
        case 5: case 10: {
          const double centre =
              (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) + val(i, j + 1)) / 4;
          const bool joined = (centre >= 0.0) == (code == 5);
          pairs = joined ? std::vector<std::pair<int, int>>{{3, 2}, {0, 1}}
                         : std::vector<std::pair<int, int>>{{3, 0}, {1, 2}};
          break;
        }
        default: break;
      }
      for (auto [a, b] : pairs) {
        cross_point(edges[a]);
        cross_point(edges[b]);
        segs.emplace_back(edges[a], edges[b]);
      }
    }
  }
  return detail::chain_segments(segs, at);
}

/// Levels splitting the z range of the viewport into count + 1 equal bands.
inline std::vector<double> contour_levels(const PolynomialSurface& surface, const Bounds& box,
                                          std::size_t count, std::size_t n = 200) {
  if (count == 0) return {};
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double z = surface(box.xmin + box.width() * i / n, box.ymin + box.height() * j / n);
      lo = std::min(lo, z);
      hi = std::max(hi, z);
    }
  }
  std::vector<double> levels;
  if (!(hi > lo)) return levels;
  for (std::size_t k = 1; k <= count; ++k) {
    levels.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count + 1));
  }
  return levels;
}

namespace detail {

inline void grow(Bounds& b, Vec2 p) {
  b.xmin = std::min(b.xmin, p.x);
  b.xmax = std::max(b.xmax, p.x);
  b.ymin = std::min(b.ymin, p.y);
  b.ymax = std::max(b.ymax, p.y);
}

inline std::string verdict(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace detail

/// Terrain, contours and plot layers; master and parallels when a plan is
/// given.
inline RenderScene scene_from_plan(const LevelCurveSet& terrain, const PolynomialSurface& surface,
                                   const PlotPolygon& plot, const CoveragePlan* plan,
                                   std::size_t contour_count, const PlanParams& params = {}) {
  RenderScene scene;
  Bounds box = terrain.points.empty() ? Bounds{plot[0].x, plot[0].x, plot[0].y, plot[0].y}
                                      : terrain.bounds;
  for (const Vec2& v : plot.vertices()) detail::grow(box, v);

  Layer raw{"level_curves", {}, "terrain"};
  for (auto [b, e] : terrain.runs()) {
    Geometry g;
    g.parts.emplace_back();
    for (std::size_t i = b; i < e; ++i) {
      g.parts.back().push_back({terrain.points[i].x, terrain.points[i].y});
    }
    raw.items.push_back(std::move(g));
  }

  Layer master{"master", {}, "master"};
  Layer parallels{"parallels", {}, "parallel"};
  if (plan) {
    Geometry m;
    m.parts.push_back(flatten_curve(plan->master));
    m.state = detail::verdict(plan->diagnostics.all_pass());
    for (Vec2 p : m.parts.back()) detail::grow(box, p);
    master.items.push_back(std::move(m));
    const auto& drain = plan->diagnostics.drainage;
    for (std::size_t i = 0; i < plan->family.parallels.size(); ++i) {
      const Parallel& p = plan->family.parallels[i];
      Geometry g;
      bool ok = i >= drain.size() || drain[i].pass;
      for (const ApwCurve& piece : p.pieces) {
        g.parts.push_back(flatten_curve(piece));
        ok = ok && piece.min_radius() >= params.min_radius - 1e-6;
      }
      g.state = detail::verdict(ok);
      parallels.items.push_back(std::move(g));
    }
  }
  scene.viewport = box;

  scene.layers.push_back(std::move(raw));
  if (contour_count > 0 && box.width() > 0 && box.height() > 0) {
    Layer contours{"contours", {}, "surface"};
    for (double level : contour_levels(surface, box, contour_count)) {
      for (auto& line : contour_lines(surface, box, level)) {
        Geometry g;
        g.parts.push_back(std::move(line));
        contours.items.push_back(std::move(g));
      }
    }
    scene.layers.push_back(std::move(contours));
  }
  Layer outline{"plot", {}, "plot"};
  const std::vector<Vec2> ring(plot.vertices().begin(), plot.vertices().end());
  outline.items.push_back(Geometry{Geometry::Kind::Ring, {ring}, ""});
  scene.layers.push_back(std::move(outline));
  Layer vertices{"vertices", {}, "vertex"};
  vertices.items.push_back(Geometry{Geometry::Kind::Markers, {ring}, ""});
  scene.layers.push_back(std::move(vertices));
  if (plan) {
    scene.layers.push_back(std::move(master));
    scene.layers.push_back(std::move(parallels));
  }
  return scene;
}

namespace detail {

inline std::string num(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos) s = decimals > 0 ? "0." + std::string(decimals, '0') : "0";
  return s;
}

inline const char* svg_style(const std::string& style, const std::string& state) {
  if (state == "fail") return "fill:none;stroke:#d62728;stroke-width:1.5";
  if (style == "terrain") return "fill:none;stroke:#8c8c8c;stroke-width:0.5";
  if (style == "surface") return "fill:none;stroke:#2ca02c;stroke-width:0.5";
  if (style == "plot") return "fill:#f7f3e3;stroke:#000000;stroke-width:2";
  if (style == "vertex") return "fill:#000000;stroke:none";
  if (style == "master") return "fill:none;stroke:#1f77b4;stroke-width:2.5";
  if (style == "hull") return "fill:none;stroke:#9467bd;stroke-width:1;stroke-dasharray:4 2";
  return "fill:none;stroke:#ff7f0e;stroke-width:0.8";
}

}  // namespace detail

/// SVG in metres with north up.
inline std::string write_svg(const RenderScene& scene) {
  const Bounds& v = scene.viewport;
  auto X = [&](double x) { return detail::num(x - v.xmin); };
  auto Y = [&](double y) { return detail::num(v.ymax - y); };
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::num(v.width()) + "\" height=\"" + detail::num(v.height()) + "\" viewBox=\"0 0 " +
         detail::num(v.width()) + " " + detail::num(v.height()) + "\">\n";
  for (const Layer& layer : scene.layers) {
    out += "  <g id=\"" + layer.name + "\">\n";
    for (const Geometry& g : layer.items) {
      if (g.kind == Geometry::Kind::Markers) {
        for (const auto& part : g.parts) {
          for (Vec2 p : part) {
            out += "    <circle cx=\"" + X(p.x) + "\" cy=\"" + Y(p.y) + "\" r=\"2\" style=\"" +
                   detail::svg_style(layer.style, g.state) + "\"/>\n";
          }
        }
        continue;
      }
      std::string d;
      for (const auto& part : g.parts) {
        for (std::size_t i = 0; i < part.size(); ++i) {
          if (!d.empty()) d += ' ';
          d += (i == 0 ? "M " : "L ") + X(part[i].x) + " " + Y(part[i].y);
        }
        if (g.kind == Geometry::Kind::Ring && !part.empty()) d += " Z";
      }
      if (d.empty()) continue;
      out += "    <path d=\"" + d + "\" style=\"" + detail::svg_style(layer.style, g.state) +
             "\"/>\n";
    }
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

inline nlohmann::ordered_json diagnostics_json(const Diagnostics& d) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json conds = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < d.conditions.size(); ++i) {
    conds.push_back({{"condition", i + 1}, {"name", kConditionNames[i]}, {"pass", d.conditions[i]}});
  }
  j["conditions"] = conds;
  j["all_pass"] = d.all_pass();
  j["max_slope_deg"] = d.max_tilt_deg;
  j["max_pitch_deg"] = d.max_pitch_deg;
  j["min_radius"] = std::isfinite(d.min_radius) ? nlohmann::ordered_json(d.min_radius) : nullptr;
  j["centre_distance"] =
      std::isfinite(d.centre_distance) ? nlohmann::ordered_json(d.centre_distance) : nullptr;
  j["centre_in_plot"] = d.centre_in_plot;
  j["offset_collapsed"] = d.collapsed;
  j["spacing_error"] = d.spacing_error;
  j["optimizer_exit"] = to_string(d.exit);
  j["line_count"] = d.line_count;
  j["naf"] = d.naf;
  j["nbf"] = d.nbf;
  j["drainage_failures"] = d.drainage_failures;
  j["flat_lines"] = d.flat_lines;
  j["notes"] = d.notes;
  return j;
}

/// FeatureCollection: the master, then one LineString per in-plot piece of
/// each parallel.
inline nlohmann::ordered_json plan_geojson(const CoveragePlan& plan) {
  auto line = [](const ApwCurve& c) {
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (Vec2 p : flatten_curve(c)) coords.push_back({p.x, p.y});
    return nlohmann::ordered_json{{"type", "LineString"}, {"coordinates", coords}};
  };
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  features.push_back({{"type", "Feature"},
                      {"geometry", line(plan.master)},
                      {"properties",
                       {{"role", "master"},
                        {"line", 0},
                        {"offset", 0.0},
                        {"diagnostics", diagnostics_json(plan.diagnostics)}}}});
  const auto& drain = plan.diagnostics.drainage;
  for (std::size_t i = 0; i < plan.family.parallels.size(); ++i) {
    const Parallel& p = plan.family.parallels[i];
    for (std::size_t k = 0; k < p.pieces.size(); ++k) {
      nlohmann::ordered_json props{{"role", "parallel"},
                                   {"line", p.index},
                                   {"offset", p.offset},
                                   {"piece", k},
                                   {"min_radius", p.pieces[k].min_radius()}};
      if (i < drain.size()) {
        props["drainage"] = drain[i].pass;
        props["flat"] = drain[i].flat;
      }
      features.push_back({{"type", "Feature"}, {"geometry", line(p.pieces[k])},
                          {"properties", props}});
    }
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

inline std::string write_geojson(const CoveragePlan& plan) {
  return plan_geojson(plan).dump(1) + "\n";
}

namespace detail {

inline nlohmann::ordered_json coords_json(const std::vector<Vec2>& pts) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (Vec2 p : pts) out.push_back({p.x, p.y});
  return out;
}

inline const char* kind_name(Geometry::Kind k) {
  switch (k) {
    case Geometry::Kind::Ring: return "ring";
    case Geometry::Kind::Markers: return "markers";
    default: return "polyline";
  }
}

}  // namespace detail

/// Scene as plain JSON for a browser client.
inline nlohmann::ordered_json scene_json(const RenderScene& scene) {
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const Layer& l : scene.layers) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const Geometry& g : l.items) {
      nlohmann::ordered_json parts = nlohmann::ordered_json::array();
      for (const auto& part : g.parts) parts.push_back(detail::coords_json(part));
      nlohmann::ordered_json item{{"kind", detail::kind_name(g.kind)}, {"parts", parts}};
      if (!g.state.empty()) item["state"] = g.state;
      items.push_back(std::move(item));
    }
    layers.push_back({{"name", l.name}, {"style", l.style}, {"items", items}});
  }
  const Bounds& v = scene.viewport;
  return {{"viewport", {{"xmin", v.xmin}, {"xmax", v.xmax}, {"ymin", v.ymin}, {"ymax", v.ymax}}},
          {"layers", layers}};
}

/// Master, parallels and diagnostics with flattened geometry.
inline nlohmann::ordered_json plan_json(const CoveragePlan& plan, const PlanParams& params = {}) {
  nlohmann::ordered_json parallels = nlohmann::ordered_json::array();
  const auto& drain = plan.diagnostics.drainage;
  for (std::size_t i = 0; i < plan.family.parallels.size(); ++i) {
    const Parallel& p = plan.family.parallels[i];
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    bool ok = i >= drain.size() || drain[i].pass;
    for (const ApwCurve& c : p.pieces) {
      pieces.push_back(detail::coords_json(flatten_curve(c)));
      ok = ok && c.min_radius() >= params.min_radius - 1e-6;
    }
    parallels.push_back({{"line", p.index},
                         {"offset", p.offset},
                         {"state", detail::verdict(ok)},
                         {"pieces", pieces}});
  }
  nlohmann::ordered_json regions = nlohmann::ordered_json::array();
  for (const RegionPlan& r : plan.regions) {
    nlohmann::ordered_json ring = detail::coords_json(
        std::vector<Vec2>(r.region.vertices().begin(), r.region.vertices().end()));
    nlohmann::ordered_json entry{{"polygon", ring}, {"concave", r.concave}};
    entry["diagnostics"] = r.diagnostics ? diagnostics_json(*r.diagnostics) : nullptr;
    regions.push_back(std::move(entry));
  }
  return {{"all_pass", plan.diagnostics.all_pass()},
          {"line_count", plan.line_count()},
          {"flat", plan.flat},
          {"master", detail::coords_json(flatten_curve(plan.master))},
          {"master_arcs", plan.master.size()},
          {"parallels", parallels},
          {"regions", regions},
          {"diagnostics", diagnostics_json(plan.diagnostics)}};
}

/// Waypoints every `step` metres along each line, plus its end.
inline std::string write_waypoints_csv(const std::vector<std::pair<long, std::vector<ApwCurve>>>& lines,
                                       double step = 1.0) {
  std::string out = "line_id,seq,x,y,heading_deg\n";
  for (const auto& [id, pieces] : lines) {
    std::size_t seq = 0;
    for (const ApwCurve& c : pieces) {
      for (double s : c.stations(step)) {
        const Vec2 p = c.point_at(s);
        double h = deg(angle_of(c.tangent_at(s)));
        if (h < 0) h += 360.0;
        if (h >= 360.0) h -= 360.0;
        out += std::to_string(id) + "," + std::to_string(seq++) + "," + detail::num(p.x) + "," +
               detail::num(p.y) + "," + detail::num(h) + "\n";
      }
    }
  }
  return out;
}

inline std::string write_waypoints_csv(const CoveragePlan& plan, double step = 1.0) {
  std::vector<std::pair<long, std::vector<ApwCurve>>> lines;
  for (const Parallel& p : plan.family.parallels) lines.emplace_back(p.index, p.pieces);
  return write_waypoints_csv(lines, step);
}

/// Plain-text verdict on the five conditions with measured values.
inline std::string write_report(const CoveragePlan& plan, const PlanParams& params) {
  const Diagnostics& d = plan.diagnostics;
  auto mark = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  auto finite = [](double v) { return std::isfinite(v) ? detail::num(v, 2) : std::string("n/a"); };
  std::string out = "agroline plan report\n\n";
  out += "(1) slope: " + std::string(mark(d.conditions[0])) + "  max slope " +
         detail::num(d.max_tilt_deg, 2) + " deg (limit " + detail::num(params.max_slope_deg, 2) +
         "), max pitch along lines " + detail::num(d.max_pitch_deg, 2) + " deg\n";
  out += "(2) turning radius: " + std::string(mark(d.conditions[1])) + "  min in-plot radius " +
         finite(d.min_radius) + " m (limit " + detail::num(params.min_radius, 2) +
         "), centre distance " + finite(d.centre_distance) + " m" +
         (d.centre_in_plot ? ", centre inside plot" : "") +
         (d.collapsed ? ", offset collapsed" : "") + "\n";
  out += "(3) groove spacing: " + std::string(mark(d.conditions[2])) + "  spacing " +
         detail::num(params.spacing, 2) + " m, max deviation " + detail::num(d.spacing_error, 6) +
         " m\n";
  out += "(4) line count: " + std::string(mark(d.conditions[3])) + "  lines " +
         std::to_string(d.line_count) + ", naf " + std::to_string(d.naf) + ", nbf " +
         std::to_string(d.nbf) + ", optimizer " + to_string(d.exit) + "\n";
  out += "(5) drainage: " + std::string(mark(d.conditions[4])) + "  failing lines " +
         std::to_string(d.drainage_failures) + " of " + std::to_string(d.drainage.size()) +
         ", flat lines " + std::to_string(d.flat_lines) + "\n";
  if (plan.regions.size() > 1) {
    out += "\nregions\n";
    for (std::size_t r = 0; r < plan.regions.size(); ++r) {
      const RegionPlan& rp = plan.regions[r];
      std::string flags;
      if (rp.diagnostics) {
        for (bool c : rp.diagnostics->conditions) flags += c ? 'P' : 'F';
      }
      out += "  region " + std::to_string(r + 1) + ": " + flags +
             (rp.concave ? " (concave)" : "") + "\n";
    }
  }
  if (!d.notes.empty()) {
    out += "\nnotes\n";
    for (const std::string& n : d.notes) out += "  " + n + "\n";
  }
  out += "\nresult: " + std::string(d.all_pass() ? "all conditions pass" : "constraint failure") +
         "\n";
  return out;
}

}  // namespace agroline

#endif  // AGROLINE_EXPORT_HPP
