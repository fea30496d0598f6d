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

#ifndef AGROLINE_BOUNDARY_HPP
#define AGROLINE_BOUNDARY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "agroline/polygon.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

enum class Location { Inside, Boundary, Outside };

/// Even-odd classification with a 1e-9 m boundary band.
inline Location point_in_polygon(Vec2 p, const PlotPolygon& plot, double band = 1e-9) {
  if (plot.distance_to_boundary(p) <= band) return Location::Boundary;
  bool inside = false;
  for (std::size_t i = 0, n = plot.size(); i < n; ++i) {
    const Vec2 a = plot[i];
    const Vec2 b = plot[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

inline bool in_plot(Vec2 p, const PlotPolygon& plot) {
  return point_in_polygon(p, plot) != Location::Outside;
}

/// Densified boundary. `station[i]` is the distance along the boundary from
/// vertex 0 to points[i]; zc is filled by the planner.
struct BoundarySample {
  std::vector<Vec2> points;
  std::vector<bool> is_vertex;
  std::vector<double> station;
  std::vector<double> zc;
  double perimeter = 0.0;

  std::size_t size() const { return points.size(); }
};

/// Each edge of length L is cut into ceil(L / max_step) equal pieces.
inline BoundarySample resample_boundary(const PlotPolygon& plot, double max_step = 10.0) {
  BoundarySample out;
  double s = 0.0;
  for (std::size_t i = 0; i < plot.size(); ++i) {
    auto [a, b] = plot.edge(i);
    const double len = distance(a, b);
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / max_step - 1e-12)));
    for (std::size_t k = 0; k < pieces; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(pieces);
      out.points.push_back(a + (b - a) * t);
      out.is_vertex.push_back(k == 0);
      out.station.push_back(s + len * t);
    }
    s += len;
  }
  out.perimeter = s;
  return out;
}

/// Point on the polygon boundary at distance `s` from vertex 0 (wrapping).
inline Vec2 boundary_point_at(const PlotPolygon& plot, double s) {
  const double perimeter = plot.perimeter();
  s = std::fmod(s, perimeter);
  if (s < 0) s += perimeter;
  for (std::size_t i = 0; i < plot.size(); ++i) {
    auto [a, b] = plot.edge(i);
    const double len = distance(a, b);
    if (s <= len) return a + (b - a) * (s / len);
    s -= len;
  }
  return plot[0];
}

/// Boundary station of the boundary point closest to p.
inline double boundary_station_of(const PlotPolygon& plot, Vec2 p) {
  double best = INFINITY;
  double best_s = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < plot.size(); ++i) {
    auto [a, b] = plot.edge(i);
    const Vec2 q = project_to_segment(p, a, b);
    const double d = distance(p, q);
    if (d < best) {
      best = d;
      best_s = s + distance(a, q);
    }
    s += distance(a, b);
  }
  return best_s;
}

struct DistanceRange {
  double min = INFINITY;
  double max = 0.0;
};

/// Nearest and farthest sample from c.
inline DistanceRange distance_range(Vec2 c, std::span<const Vec2> sample) {
  DistanceRange r;
  for (const Vec2& p : sample) {
    const double d = distance(c, p);
    r.min = std::min(r.min, d);
    r.max = std::max(r.max, d);
  }
  return r;
}

inline double min_distance_to_points(Vec2 c, std::span<const Vec2> sample) {
  return distance_range(c, sample).min;
}

}  // namespace agroline

#endif  // AGROLINE_BOUNDARY_HPP
