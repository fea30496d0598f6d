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

#ifndef AGROLINE_HULL_HPP
#define AGROLINE_HULL_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "agroline/error.hpp"
#include "agroline/polygon.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

/// Strictly convex hull, counter-clockwise, collinear points dropped
/// (monotone chain).
inline PlotPolygon convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw Error(ErrorKind::DegenerateHull, "fewer than 3 distinct points");

  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (const Vec2& q : p) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], q - hull[k - 2]) <= 0) --k;
    hull[k++] = q;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw Error(ErrorKind::DegenerateHull, "all points are collinear");
  return PlotPolygon(std::move(hull));
}

/// Vertices that are not collinear with their neighbours (within `tol`
/// metres of the line through them).
inline std::vector<Vec2> drop_collinear(std::span<const Vec2> vertices, double tol = 1e-9) {
  std::vector<Vec2> v(vertices.begin(), vertices.end());
  bool changed = true;
  while (changed && v.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() > 3; ++i) {
      const Vec2 prev = v[(i + v.size() - 1) % v.size()];
      const Vec2 next = v[(i + 1) % v.size()];
      const double base = distance(prev, next);
      const double off = base > 0 ? std::abs(cross(next - prev, v[i] - prev)) / base : 0.0;
      if (off <= tol) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return v;
}

/// A polygon is convex iff, ignoring collinear boundary nodes, its vertices
/// are exactly the vertices of its hull.
inline bool is_convex(const PlotPolygon& plot, double tol = 1e-9) {
  const PlotPolygon hull = convex_hull(plot.vertices());
  const std::vector<Vec2> own = drop_collinear(plot.vertices(), tol);
  if (own.size() != hull.size()) return false;
  for (const Vec2& v : own) {
    bool found = false;
    for (const Vec2& h : hull.vertices()) {
      if (distance(v, h) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace agroline

#endif  // AGROLINE_HULL_HPP
