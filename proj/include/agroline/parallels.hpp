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

#ifndef AGROLINE_PARALLELS_HPP
#define AGROLINE_PARALLELS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "agroline/arc.hpp"
#include "agroline/clip.hpp"
#include "agroline/error.hpp"
#include "agroline/plan_params.hpp"
#include "agroline/polygon.hpp"
#include "agroline/surface.hpp"

namespace agroline {

/// One plantation line: the offset of the master at `offset` metres, cut to
/// the plot.
struct Parallel {
  long index = 0;
  double offset = 0.0;
  std::vector<ApwCurve> pieces;

  double length() const {
    double l = 0.0;
    for (const ApwCurve& p : pieces) l += p.length();
    return l;
  }
};

struct ParallelFamily {
  ApwCurve carrier;               // master extended so its offsets sweep the plot
  std::vector<Parallel> parallels;  // ascending index
  bool collapsed = false;
  double collapse_offset = 0.0;

  std::size_t line_count() const { return parallels.size(); }
};

/// Extends the master so that its offsets can reach every part of the plot.
/// A single arc becomes its full circle, with the seam opposite its middle.
inline ApwCurve coverage_carrier(const ApwCurve& master, const PlotPolygon& plot) {
  if (master.size() == 1) {
    const Arc& a = master.front();
    const double mid = a.start_angle + a.sweep / 2;
    return ApwCurve({Arc{a.centre, a.radius, mid + kPi, a.orientation() * kTwoPi}});
  }
  const auto box = plot.bounds();
  const double diag = std::hypot(box.xmax - box.xmin, box.ymax - box.ymin);
  std::vector<Arc> arcs(master.arcs().begin(), master.arcs().end());
  auto grow = [&](const Arc& a) {
    return std::min(diag / a.radius, std::max(0.0, (kTwoPi - std::abs(a.sweep)) / 2));
  };
  Arc& head = arcs.front();
  const double g0 = grow(head);
  head.start_angle -= head.orientation() * g0;
  head.sweep += head.orientation() * g0;
  Arc& tail = arcs.back();
  tail.sweep += tail.orientation() * grow(tail);
  return ApwCurve(std::move(arcs));
}

/// Offsets k * spacing on both sides of the master, each clipped to the plot.
/// Each side runs until an offset misses the plot after having met it, or
/// collapses. Offsets farther than any arc can reach are never scanned.
inline ParallelFamily generate_parallels(const ApwCurve& master, const PlotPolygon& plot,
                                         const PlanParams& params) {
  ParallelFamily f{coverage_carrier(master, plot), {}, false, 0.0};
  double reach = 0.0;
  for (const Arc& a : f.carrier.arcs()) {
    double far = 0.0;
    for (const Vec2& v : plot.vertices()) far = std::max(far, distance(v, a.centre));
    reach = std::max(reach, a.radius + far);
  }
  const long limit = static_cast<long>(std::ceil(reach / params.spacing)) + 1;

  auto clip_at = [&](long k) -> std::optional<std::vector<ApwCurve>> {
    const double s = static_cast<double>(k) * params.spacing;
    try {
      return clip_to_polygon(offset_apw(f.carrier, s), plot, params.min_piece);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OffsetCollapse) throw;
      if (!f.collapsed || std::abs(s) < std::abs(f.collapse_offset)) f.collapse_offset = s;
      f.collapsed = true;
      return std::nullopt;
    }
  };

  std::vector<Parallel> sides[2];
  bool met_zero = false;
  for (int side : {1, -1}) {
    bool met = side < 0 && met_zero;
    for (long k = side > 0 ? 0 : -1; std::abs(k) <= limit; k += side) {
      auto pieces = clip_at(k);
      if (!pieces) break;
      if (pieces->empty()) {
        if (met) break;
        continue;
      }
      met = true;
      if (k == 0) met_zero = true;
      sides[side > 0 ? 0 : 1].push_back(
          {k, static_cast<double>(k) * params.spacing, std::move(*pieces)});
    }
  }
  std::reverse(sides[1].begin(), sides[1].end());
  f.parallels = std::move(sides[1]);
  for (Parallel& p : sides[0]) f.parallels.push_back(std::move(p));
  return f;
}

struct LineDrainage {
  long index = 0;
  bool pass = false;
  bool flat = false;
  double z_start = 0.0;
  double z_end = 0.0;
  double interior_min = 0.0;
};

/// Drainage of one line given by its in-plot pieces, in travel order. The
/// extremities are where the line first enters and last leaves the plot.
/// Ground is flat when the steepest gradient met along the line, times its
/// length, stays under flat_threshold.
inline LineDrainage check_line_drainage(const std::vector<ApwCurve>& pieces,
                                        const PolynomialSurface& surface,
                                        const PlanParams& params, long index = 0) {
  LineDrainage r;
  r.index = index;
  if (pieces.empty()) return r;
  std::vector<Vec2> pts;
  double length = 0.0;
  for (const ApwCurve& p : pieces) {
    for (double s : p.stations(params.slope_step)) pts.push_back(p.point_at(s));
    length += p.length();
  }
  if (pts.size() < 3) pts.insert(pts.begin() + 1, pieces.front().point_at(length / 2));
  double steepest = 0.0;
  r.interior_min = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    steepest = std::max(steepest, norm(surface.gradient(pts[i])));
    if (i != 0 && i + 1 != pts.size()) r.interior_min = std::min(r.interior_min, surface(pts[i]));
  }
  r.z_start = surface(pts.front());
  r.z_end = surface(pts.back());
  r.flat = steepest * length < params.flat_threshold;
  const double floor = r.interior_min + params.drainage_tolerance;
  r.pass = r.flat || (r.z_start > floor && r.z_end > floor);
  return r;
}

inline std::vector<LineDrainage> check_drainage(const ParallelFamily& family,
                                                const PolynomialSurface& surface,
                                                const PlanParams& params) {
  std::vector<LineDrainage> out;
  for (const Parallel& p : family.parallels) {
    out.push_back(check_line_drainage(p.pieces, surface, params, p.index));
  }
  return out;
}

}  // namespace agroline

#endif  // AGROLINE_PARALLELS_HPP
