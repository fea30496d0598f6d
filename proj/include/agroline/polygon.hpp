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

#ifndef AGROLINE_POLYGON_HPP
#define AGROLINE_POLYGON_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agroline/error.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

namespace detail {

inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline int orientation(Vec2 a, Vec2 b, Vec2 c) { return sign_of(cross(b - a, c - a)); }

// c is collinear with ab; is it within the bounding box of ab?
inline bool within_box(Vec2 a, Vec2 b, Vec2 c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// Closed segments ab and cd share at least one point.
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  using detail::orientation;
  using detail::within_box;
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_box(a, b, c)) return true;
  if (o2 == 0 && within_box(a, b, d)) return true;
  if (o3 == 0 && within_box(c, d, a)) return true;
  if (o4 == 0 && within_box(c, d, b)) return true;
  return false;
}

/// Closest point to p on segment ab.
inline Vec2 project_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

inline double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  return distance(p, project_to_segment(p, a, b));
}

/// A plot boundary: an implicitly closed simple polygon with at least three
/// vertices and no repeated consecutive vertex.
class PlotPolygon {
 public:
  static constexpr double kCoincidentTol = 1e-9;

  explicit PlotPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    validate();
  }

  std::span<const Vec2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
  Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Edge i runs from vertex i to vertex i+1 (wrapping).
  std::pair<Vec2, Vec2> edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }

  /// Shoelace area; positive for counter-clockwise vertex order.
  double signed_area() const {
    double a = 0.0;
    for (std::size_t i = 0; i < size(); ++i) a += cross(vertex(i), vertex(i + 1));
    return 0.5 * a;
  }
  double area() const { return std::abs(signed_area()); }

  double perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < size(); ++i) p += distance(vertex(i), vertex(i + 1));
    return p;
  }

  struct Box {
    double xmin, xmax, ymin, ymax;
  };
  Box bounds() const {
    Box b{vertices_[0].x, vertices_[0].x, vertices_[0].y, vertices_[0].y};
    for (const Vec2& v : vertices_) {
      b.xmin = std::min(b.xmin, v.x);
      b.xmax = std::max(b.xmax, v.x);
      b.ymin = std::min(b.ymin, v.y);
      b.ymax = std::max(b.ymax, v.y);
    }
    return b;
  }

  double distance_to_boundary(Vec2 p) const {
    double best = INFINITY;
    for (std::size_t i = 0; i < size(); ++i) {
      auto [a, b] = edge(i);
      best = std::min(best, distance_to_segment(p, a, b));
    }
    return best;
  }

  /// Closest boundary point and the edge it lies on.
  std::pair<Vec2, std::size_t> closest_boundary_point(Vec2 p) const {
    double best = INFINITY;
    Vec2 best_point;
    std::size_t best_edge = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      auto [a, b] = edge(i);
      const Vec2 q = project_to_segment(p, a, b);
      const double d = distance(p, q);
      if (d < best) {
        best = d;
        best_point = q;
        best_edge = i;
      }
    }
    return {best_point, best_edge};
  }

 private:
  void validate() const {
    const std::size_t n = vertices_.size();
    if (n < 3) {
      throw Error(ErrorKind::DegeneratePolygon,
                  "polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = vertices_[i];
      const Vec2 b = vertices_[(i + 1) % n];
      if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
        throw Error(ErrorKind::InvalidPolygon, "non-finite vertex", 0, i);
      }
      if (distance(a, b) <= kCoincidentTol) {
        throw Error(ErrorKind::DegeneratePolygon,
                    "consecutive vertices " + std::to_string(i) + " and " +
                        std::to_string((i + 1) % n) + " coincide",
                    0, i);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = vertices_[i];
      const Vec2 b = vertices_[(i + 1) % n];
      // Adjacent edges may only share their common vertex.
      const Vec2 c = vertices_[(i + 2) % n];
      if (detail::orientation(a, b, c) == 0 && dot(b - a, c - b) < 0) {
        throw Error(ErrorKind::InvalidPolygon, "edge folds back at vertex " +
                                                   std::to_string((i + 1) % n), 0, i);
      }
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (segments_intersect(a, b, vertices_[j], vertices_[(j + 1) % n])) {
          throw Error(ErrorKind::InvalidPolygon,
                      "edges " + std::to_string(i) + " and " + std::to_string(j) +
                          " intersect",
                      0, i);
        }
      }
    }
    if (area() <= 0.0) throw Error(ErrorKind::DegeneratePolygon, "zero area");
  }

  std::vector<Vec2> vertices_;
};

}  // namespace agroline

#endif  // AGROLINE_POLYGON_HPP
