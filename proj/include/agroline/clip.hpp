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

#ifndef AGROLINE_CLIP_HPP
#define AGROLINE_CLIP_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "agroline/arc.hpp"
#include "agroline/boundary.hpp"
#include "agroline/polygon.hpp"

namespace agroline {

namespace detail {

// Angular parameters (radians from the arc start) where the arc meets the
// segment ab, strictly inside the arc.
inline void arc_segment_crossings(const Arc& arc, Vec2 a, Vec2 b, std::vector<double>& out) {
  const Vec2 d = b - a;
  const Vec2 f = a - arc.centre;
  const double qa = dot(d, d);
  const double qb = 2.0 * dot(f, d);
  const double qc = dot(f, f) - arc.radius * arc.radius;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (qa == 0.0 || disc < 0.0) return;
  const double root = std::sqrt(disc);
  // Stable quadratic roots.
  const double q = -0.5 * (qb + std::copysign(root, qb));
  double ts[2] = {q / qa, q != 0.0 ? qc / q : q / qa};
  const double tol = 1e-12;
  const double sweep = std::abs(arc.sweep);
  for (double t : ts) {
    if (t < -tol || t > 1.0 + tol) continue;
    const Vec2 p = a + d * std::clamp(t, 0.0, 1.0);
    const double param = arc.angular_param(angle_of(p - arc.centre));
    if (param > 0.0 && param < sweep) out.push_back(param);
  }
}

}  // namespace detail

/// In-plot pieces of a curve, in curve order. Pieces shorter than
/// `min_length` metres are dropped.
inline std::vector<ApwCurve> clip_to_polygon(const ApwCurve& curve, const PlotPolygon& plot,
                                             double min_length = 0.5) {
  std::vector<ApwCurve> pieces;
  std::vector<Arc> current;
  auto close_piece = [&] {
    if (current.empty()) return;
    ApwCurve piece(std::move(current));
    current.clear();
    if (piece.length() >= min_length) pieces.push_back(std::move(piece));
  };

  for (const Arc& arc : curve.arcs()) {
    std::vector<double> cuts{0.0, std::abs(arc.sweep)};
    for (std::size_t i = 0; i < plot.size(); ++i) {
      auto [a, b] = plot.edge(i);
      detail::arc_segment_crossings(arc, a, b, cuts);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double x, double y) { return (y - x) * arc.radius < 1e-9; }),
               cuts.end());
    if (cuts.size() < 2 || cuts.back() < std::abs(arc.sweep)) {
      cuts.back() = std::abs(arc.sweep);
    }
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double t0 = cuts[k];
      const double t1 = cuts[k + 1];
      const Vec2 mid = arc.at_angle(arc.start_angle + arc.orientation() * 0.5 * (t0 + t1));
      if (in_plot(mid, plot)) {
        current.push_back(arc.slice(t0, t1));
      } else {
        close_piece();
      }
    }
  }
  close_piece();
  return pieces;
}

}  // namespace agroline

#endif  // AGROLINE_CLIP_HPP
