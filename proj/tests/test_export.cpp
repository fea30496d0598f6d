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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "agroline/export.hpp"
#include "support.hpp"

using namespace agroline;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

LevelCurveSet no_terrain(Bounds b) {
  LevelCurveSet t;
  t.bounds = b;
  return t;
}

// Strip around a circle of radius 500 holding offsets -5..5.
struct StripPlan {
  PlotPolygon plot = testing::annular_sector({1000, -200}, 484.9, 515.1, 60, 120);
  PolynomialSurface surface = PolynomialSurface::constant(0);
  PlanParams params;
  CoveragePlan plan = make();

  CoveragePlan make() const {
    const ApwCurve master({Arc{{1000, -200}, 500, rad(70), rad(40)}});
    ParallelFamily f = generate_parallels(master, plot, params);
    BoundarySample b = resample_boundary(plot, params.max_step);
    fill_elevations(b, surface);
    Diagnostics d = diagnose(master, f, plot, b, surface, params, OptimizerExit::Settled,
                             static_cast<long>(f.line_count()), 0);
    return CoveragePlan{master, std::move(f), std::move(d), {}, false};
  }
};

CoveragePlan master_only() {
  const ApwCurve master({Arc{{0, 0}, 100, 0, 1.0}});
  return CoveragePlan{master, ParallelFamily{master, {}, false, 0.0}, Diagnostics{}, {}, false};
}

}  // namespace

TEST_CASE("contour of z = x at level 5 is the line x = 5") {
  const PolynomialSurface s(2, 2, {0, 0, 1, 0});
  const auto lines = contour_lines(s, Bounds{0, 10, 0, 10}, 5.0);
  REQUIRE(lines.size() == 1);
  const double cell = 10.0 / 200;
  CHECK(lines[0].size() == 201);
  for (Vec2 p : lines[0]) CHECK_THAT(p.x, WithinAbs(5.0, cell));
  const auto [lo, hi] = std::minmax(lines[0].front().y, lines[0].back().y);
  CHECK_THAT(lo, WithinAbs(0.0, 1e-12));
  CHECK_THAT(hi, WithinAbs(10.0, 1e-12));
}

TEST_CASE("circular contour closes into one loop") {
  // x^2 + y^2: index 2 holds v^2, index 6 holds u^2.
  const PolynomialSurface s(3, 3, {0, 0, 1, 0, 0, 0, 1, 0, 0});
  const auto lines = contour_lines(s, Bounds{-10, 10, -10, 10}, 25.0);
  REQUIRE(lines.size() == 1);
  CHECK(distance(lines[0].front(), lines[0].back()) < 1e-9);
  for (Vec2 p : lines[0]) CHECK_THAT(norm(p), WithinAbs(5.0, 0.05));
}

TEST_CASE("contour levels split the range evenly") {
  const PolynomialSurface s(2, 2, {0, 0, 1, 0});
  const auto levels = contour_levels(s, Bounds{0, 10, 0, 10}, 4);
  REQUIRE(levels.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(levels[i], WithinAbs(2.0 * (i + 1), 1e-12));
  CHECK(contour_levels(s, Bounds{0, 10, 0, 10}, 0).empty());
}

TEST_CASE("scene layers for a plan with 11 parallels") {
  StripPlan sp;
  REQUIRE(sp.plan.family.line_count() == 11);
  const PolynomialSurface tilted(2, 2, {0, 0.01, 0.02, 0});
  LevelCurveSet terrain = no_terrain(Bounds{500, 1500, 0, 400});
  terrain.points = {{600, 10, 1}, {600, 20, 1}, {700, 10, 2}, {700, 20, 2}};
  const RenderScene scene = scene_from_plan(terrain, tilted, sp.plot, &sp.plan, 5);

  std::vector<std::string> names;
  for (const Layer& l : scene.layers) names.push_back(l.name);
  CHECK(names == std::vector<std::string>{"level_curves", "contours", "plot", "vertices",
                                          "master", "parallels"});
  CHECK(scene.find("parallels")->items.size() == 11);
  CHECK(scene.find("master")->items.size() == 1);
  CHECK(scene.find("plot")->items.size() == 1);
  CHECK(scene.find("level_curves")->items.size() == 2);
  CHECK_FALSE(scene.find("contours")->items.empty());
  for (const Geometry& g : scene.find("parallels")->items) CHECK(g.state == "pass");

  for (const Layer& l : scene.layers) {
    for (const Geometry& g : l.items) {
      for (const auto& part : g.parts) {
        for (Vec2 p : part) {
          CHECK(p.x >= scene.viewport.xmin - 1e-9);
          CHECK(p.x <= scene.viewport.xmax + 1e-9);
          CHECK(p.y >= scene.viewport.ymin - 1e-9);
          CHECK(p.y <= scene.viewport.ymax + 1e-9);
        }
      }
    }
  }

  const RenderScene bare = scene_from_plan(terrain, tilted, sp.plot, &sp.plan, 0);
  CHECK(bare.find("contours") == nullptr);
}

TEST_CASE("svg of an empty scene has its size and no paths") {
  RenderScene scene;
  scene.viewport = Bounds{10, 130, 5, 55};
  const std::string svg = write_svg(scene);
  CHECK_THAT(svg, ContainsSubstring("width=\"120.000\""));
  CHECK_THAT(svg, ContainsSubstring("height=\"50.000\""));
  CHECK(count_of(svg, "<path") == 0);
  CHECK_THAT(svg, ContainsSubstring("</svg>"));
}

TEST_CASE("svg of one square is a single closed four-segment path") {
  RenderScene scene;
  scene.viewport = Bounds{0, 10, 0, 10};
  Layer l{"plot", {}, "plot"};
  l.items.push_back({Geometry::Kind::Ring, {{{0, 0}, {10, 0}, {10, 10}, {0, 10}}}, ""});
  scene.layers.push_back(l);
  const std::string svg = write_svg(scene);
  CHECK(count_of(svg, "<path") == 1);
  CHECK(count_of(svg, "<g id=\"plot\">") == 1);
  // Three explicit L commands plus the closing Z make four segments.
  CHECK(count_of(svg, " L ") == 3);
  CHECK(count_of(svg, " Z\"") == 1);
  // North up: (0, 0) maps to the bottom-left corner.
  CHECK_THAT(svg, ContainsSubstring("M 0.000 10.000"));
}

TEST_CASE("svg output is deterministic") {
  StripPlan sp;
  const LevelCurveSet terrain = no_terrain(Bounds{500, 1500, 0, 400});
  const auto a = write_svg(scene_from_plan(terrain, sp.surface, sp.plot, &sp.plan, 3));
  const auto b = write_svg(scene_from_plan(terrain, sp.surface, sp.plot, &sp.plan, 3));
  CHECK(a == b);
  // A constant surface has no contour levels; the layer is kept but empty.
  CHECK(count_of(a, "<g id=") == 6);
}

TEST_CASE("geojson of a master-only plan has one feature") {
  const auto j = nlohmann::json::parse(write_geojson(master_only()));
  CHECK(j["type"] == "FeatureCollection");
  CHECK(j["features"].size() == 1);
  CHECK(j["features"][0]["geometry"]["type"] == "LineString");
}

TEST_CASE("geojson features carry index, offset and diagnostics") {
  StripPlan sp;
  const auto j = nlohmann::json::parse(write_geojson(sp.plan));
  REQUIRE(j["features"].size() == 12);
  CHECK(j["features"][0]["properties"]["diagnostics"]["conditions"].size() == 5);
  for (std::size_t i = 1; i < 12; ++i) {
    const auto& p = j["features"][i]["properties"];
    const long k = static_cast<long>(i) - 6;
    CHECK(p["line"] == k);
    CHECK_THAT(p["offset"].get<double>(), WithinAbs(3.0 * k, 1e-12));
    // Every vertex lies on the offset circle.
    for (const auto& c : j["features"][i]["geometry"]["coordinates"]) {
      const double r = distance(Vec2{c[0].get<double>(), c[1].get<double>()}, {1000, -200});
      CHECK_THAT(r, WithinAbs(500 - 3.0 * k, 1e-6));
    }
  }
}

TEST_CASE("geojson coordinates round-trip and chords stay within 0.1 m") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ApwCurve curve = testing::random_apw(rng, 3, 5, 800);
    CoveragePlan plan{curve, ParallelFamily{curve, {}, false, 0.0}, Diagnostics{}, {}, false};
    const auto j = nlohmann::json::parse(write_geojson(plan));
    const auto& coords = j["features"][0]["geometry"]["coordinates"];
    const std::vector<Vec2> flat = flatten_curve(curve);
    REQUIRE(coords.size() == flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      CHECK_THAT(coords[i][0].get<double>(), WithinAbs(flat[i].x, 1e-6));
      CHECK_THAT(coords[i][1].get<double>(), WithinAbs(flat[i].y, 1e-6));
    }
    // Sagitta oracle: chord midpoints deviate from each arc by r(1 - cos(theta / 2)).
    for (const Arc& a : curve.arcs()) {
      const std::vector<Vec2> pts = flatten(a, kFlattenTolerance);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double chord = distance(pts[i], pts[i + 1]);
        const double theta = 2 * std::asin(std::min(1.0, chord / (2 * a.radius)));
        const double sagitta = a.radius * (1 - std::cos(theta / 2));
        CHECK(sagitta <= kFlattenTolerance + 1e-12);
        CHECK(a.radius - distance(a.centre, (pts[i] + pts[i + 1]) / 2) <= kFlattenTolerance + 1e-9);
      }
    }
  }
}

TEST_CASE("waypoints on a 10 m arc every metre") {
  const ApwCurve c({Arc{{0, 0}, 1000, 0, 10.0 / 1000}});
  const auto rows = lines_of(write_waypoints_csv({{0, {c}}}, 1.0));
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "line_id,seq,x,y,heading_deg");
  CHECK(rows[1].rfind("0,0,1000.000,0.000,90.000", 0) == 0);
  CHECK(rows[11].rfind("0,10,", 0) == 0);
}

TEST_CASE("waypoint heading on a counter-clockwise circle is the angle plus 90") {
  const ApwCurve c({Arc{{0, 0}, 50, 0, 6.0}});
  const auto csv = write_waypoints_csv({{3, {c}}}, 1.0);
  const auto rows = lines_of(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x = 0, y = 0, h = 0;
    long id = 0, seq = 0;
    REQUIRE(std::sscanf(rows[i].c_str(), "%ld,%ld,%lf,%lf,%lf", &id, &seq, &x, &y, &h) == 5);
    CHECK(id == 3);
    CHECK(seq == static_cast<long>(i - 1));
    // The exact tangent, formatted to 3 decimals.
    const double s = std::min<double>(seq, c.length());
    const double theta = s / 50.0;
    double want = deg(theta) + 90;
    if (want >= 360) want -= 360;
    CHECK_THAT(h, WithinAbs(want, 5e-4 + 1e-6));
    CHECK(h >= 0);
    CHECK(h < 360);
  }
}

TEST_CASE("waypoint spacing equals the step except the last") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ApwCurve c = testing::random_apw(rng, 4);
    const auto st = c.stations(2.5);
    for (std::size_t i = 1; i + 1 < st.size(); ++i) CHECK_THAT(st[i] - st[i - 1], WithinAbs(2.5, 1e-9));
    CHECK(st.back() - st[st.size() - 2] <= 2.5 + 1e-9);
    CHECK_THAT(st.back(), WithinAbs(c.length(), 1e-9));
    // Consecutive points are one step apart along the curve: chord <= step.
    for (std::size_t i = 1; i < st.size(); ++i) {
      CHECK(distance(c.point_at(st[i]), c.point_at(st[i - 1])) <= st[i] - st[i - 1] + 1e-9);
    }
  }
}

TEST_CASE("waypoint csv for a plan numbers lines by index") {
  StripPlan sp;
  const auto rows = lines_of(write_waypoints_csv(sp.plan));
  CHECK(rows.front() == "line_id,seq,x,y,heading_deg");
  CHECK(rows[1].rfind("-5,0,", 0) == 0);
  CHECK(rows.back().rfind("5,", 0) == 0);
}

TEST_CASE("report lists all five conditions with values") {
  StripPlan sp;
  const std::string r = write_report(sp.plan, sp.params);
  for (const char* name : {"(1) slope", "(2) turning radius", "(3) groove spacing",
                           "(4) line count", "(5) drainage"}) {
    CHECK_THAT(r, ContainsSubstring(name));
  }
  CHECK_THAT(r, ContainsSubstring("lines 11"));
  CHECK_THAT(r, ContainsSubstring("min in-plot radius"));
}
