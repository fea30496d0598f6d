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

// Shared generators and oracles for the test suites.

#ifndef AGROLINE_TESTS_SUPPORT_HPP
#define AGROLINE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "agroline/geometry.hpp"

namespace agroline::testing {

/// Random G1 chain of `count` arcs with radii in [min_r, max_r].
inline ApwCurve random_apw(std::mt19937_64& rng, std::size_t count, double min_r = 50,
                           double max_r = 500) {
  std::uniform_real_distribution<double> radius(min_r, max_r);
  std::uniform_real_distribution<double> turn(0.2, 1.5);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::bernoulli_distribution left(0.5);
  Vec2 at{0, 0};
  double heading = angle(rng);
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < count; ++i) {
    const double sweep = (left(rng) ? 1 : -1) * turn(rng);
    Arc a = Arc::from_start(at, heading, radius(rng), sweep);
    at = a.end();
    const Vec2 t = a.end_tangent();
    heading = angle_of(t);
    arcs.push_back(a);
  }
  return ApwCurve(std::move(arcs));
}

/// Hull vertices by the O(n^3) supporting-line test, counter-clockwise.
inline std::vector<Vec2> brute_force_hull(const std::vector<Vec2>& pts) {
  std::vector<Vec2> verts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j || pts[i] == pts[j]) continue;
      bool supporting = true;
      for (std::size_t k = 0; k < pts.size() && supporting; ++k) {
        const double c = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (c < 0) supporting = false;
        if (c == 0) {
          const double t = dot(pts[k] - pts[i], pts[j] - pts[i]);
          if (t < 0 || t > dot(pts[j] - pts[i], pts[j] - pts[i])) supporting = false;
        }
      }
      if (supporting) {
        for (Vec2 v : {pts[i], pts[j]}) {
          if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
      }
    }
  }
  Vec2 c{0, 0};
  for (Vec2 v : verts) c += v;
  c = c / static_cast<double>(verts.size());
  std::sort(verts.begin(), verts.end(),
            [&](Vec2 a, Vec2 b) { return angle_of(a - c) < angle_of(b - c); });
  return verts;
}

/// Convex plot: hull of `count` uniform points in a box of side `size`.
inline PlotPolygon random_convex_plot(std::mt19937_64& rng, std::size_t count, double size,
                                      Vec2 origin = {0, 0}) {
  std::uniform_real_distribution<double> u(0, size);
  for (;;) {
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < count; ++i) pts.push_back(origin + Vec2{u(rng), u(rng)});
    try {
      PlotPolygon hull = convex_hull(pts);
      if (hull.area() > 0.05 * size * size) return hull;
    } catch (const Error&) {
    }
  }
}

/// Polygon between two concentric circles, edges every `step_deg` degrees.
inline PlotPolygon annular_sector(Vec2 c, double r_in, double r_out, double from_deg,
                                  double to_deg, double step_deg = 1.0) {
  std::vector<Vec2> v;
  const int n = static_cast<int>(std::lround((to_deg - from_deg) / step_deg));
  for (int i = 0; i <= n; ++i) v.push_back(c + polar(rad(from_deg + i * step_deg)) * r_out);
  for (int i = n; i >= 0; --i) v.push_back(c + polar(rad(from_deg + i * step_deg)) * r_in);
  return PlotPolygon(std::move(v));
}

/// Same cyclic sequence up to rotation.
inline bool same_cycle(std::vector<Vec2> a, std::vector<Vec2> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a == b) return true;
    std::rotate(b.begin(), b.begin() + 1, b.end());
  }
  return false;
}

}  // namespace agroline::testing

#endif  // AGROLINE_TESTS_SUPPORT_HPP
