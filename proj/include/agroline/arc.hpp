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

#ifndef AGROLINE_ARC_HPP
#define AGROLINE_ARC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agroline/error.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

/// Circular arc. Positive sweep runs counter-clockwise from start_angle.
struct Arc {
  Vec2 centre;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = 0.0;

  /// Arc leaving `start` with unit heading angle `heading`, turning left for
  /// positive sweep.
  static Arc from_start(Vec2 start, double heading, double radius, double sweep) {
    const double side = sweep > 0 ? 1.0 : -1.0;
    const Vec2 normal = polar(heading + side * kPi / 2);
    const Vec2 centre = start + normal * radius;
    return {centre, radius, angle_of(start - centre), sweep};
  }

  int orientation() const { return sweep > 0 ? 1 : -1; }
  double end_angle() const { return start_angle + sweep; }
  double length() const { return radius * std::abs(sweep); }

  Vec2 at_angle(double a) const { return centre + polar(a) * radius; }
  Vec2 start() const { return at_angle(start_angle); }
  Vec2 end() const { return at_angle(end_angle()); }

  /// Point at arc length s from the start.
  Vec2 point_at(double s) const { return at_angle(start_angle + orientation() * s / radius); }

  /// Unit tangent in the travel direction at arc length s.
  Vec2 tangent_at(double s) const {
    const double a = start_angle + orientation() * s / radius;
    return perp(polar(a)) * static_cast<double>(orientation());
  }
  Vec2 start_tangent() const { return tangent_at(0.0); }
  Vec2 end_tangent() const { return tangent_at(length()); }

  /// Position along the arc, in radians from the start, of the angular
  /// direction `a`; in [0, 2pi).
  double angular_param(double a) const {
    return wrap_positive(orientation() * (a - start_angle));
  }

  /// Sub-arc between two angular parameters (radians from the start).
  Arc slice(double t0, double t1) const {
    return {centre, radius, start_angle + orientation() * t0, orientation() * (t1 - t0)};
  }

  Arc reversed() const { return {centre, radius, end_angle(), -sweep}; }

  std::optional<std::string> defect() const {
    if (!std::isfinite(radius) || !(radius > 0.0)) return "radius must be finite and positive";
    if (!std::isfinite(sweep) || sweep == 0.0) return "sweep must be finite and non-zero";
    if (std::abs(sweep) > kTwoPi + 1e-12) return "sweep exceeds a full turn";
    if (!std::isfinite(centre.x) || !std::isfinite(centre.y) || !std::isfinite(start_angle)) {
      return "non-finite arc field";
    }
    return std::nullopt;
  }
};

/// Euclidean distance from p to the arc (as a point set).
inline double distance_to_arc(Vec2 p, const Arc& arc) {
  const Vec2 d = p - arc.centre;
  const double r = norm(d);
  if (r == 0.0) return arc.radius;
  if (arc.angular_param(angle_of(d)) <= std::abs(arc.sweep)) return std::abs(r - arc.radius);
  return std::min(distance(p, arc.start()), distance(p, arc.end()));
}

/// Vertices of a polyline whose chords stay within `tolerance` of the arc.
inline std::vector<Vec2> flatten(const Arc& arc, double tolerance) {
  std::size_t pieces = 1;
  if (tolerance < arc.radius) {
    const double max_step = 2.0 * std::acos(1.0 - tolerance / arc.radius);
    pieces = static_cast<std::size_t>(std::ceil(std::abs(arc.sweep) / max_step));
  } else {
    pieces = static_cast<std::size_t>(std::ceil(std::abs(arc.sweep) / (kPi / 2)));
  }
  pieces = std::max<std::size_t>(pieces, 1);
  std::vector<Vec2> out;
  out.reserve(pieces + 1);
  for (std::size_t i = 0; i <= pieces; ++i) {
    out.push_back(arc.at_angle(arc.start_angle + arc.sweep * static_cast<double>(i) /
                                                     static_cast<double>(pieces)));
  }
  return out;
}

/// Arc-piecewise curve: tangent-continuous chain of arcs.
class ApwCurve {
 public:
  static constexpr double kPositionTol = 1e-6;
  static constexpr double kTangentTol = 1e-6;

  explicit ApwCurve(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    if (auto why = defect()) throw Error(ErrorKind::Validation, *why);
  }
  explicit ApwCurve(const Arc& arc) : ApwCurve(std::vector<Arc>{arc}) {}

  std::span<const Arc> arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  const Arc& operator[](std::size_t i) const { return arcs_[i]; }
  const Arc& front() const { return arcs_.front(); }
  const Arc& back() const { return arcs_.back(); }

  double length() const {
    double l = 0.0;
    for (const Arc& a : arcs_) l += a.length();
    return l;
  }

  Vec2 start() const { return arcs_.front().start(); }
  Vec2 end() const { return arcs_.back().end(); }

  /// Arc index and local arc length for a global arc length (clamped).
  std::pair<std::size_t, double> locate(double s) const {
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const double l = arcs_[i].length();
      if (s <= l || i + 1 == arcs_.size()) return {i, std::clamp(s, 0.0, l)};
      s -= l;
    }
    return {0, 0.0};
  }

  Vec2 point_at(double s) const {
    auto [i, local] = locate(s);
    return arcs_[i].point_at(local);
  }
  Vec2 tangent_at(double s) const {
    auto [i, local] = locate(s);
    return arcs_[i].tangent_at(local);
  }

  /// Arc-length stations every `step` metres from the start, plus the end.
  std::vector<double> stations(double step) const {
    std::vector<double> out;
    const double total = length();
    const auto count = static_cast<std::size_t>(std::floor(total / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) out.push_back(std::min(total, k * step));
    if (total - out.back() > 1e-9) out.push_back(total);
    return out;
  }

  double min_radius() const {
    double r = INFINITY;
    for (const Arc& a : arcs_) r = std::min(r, a.radius);
    return r;
  }

  /// First violated invariant, if any.
  std::optional<std::string> defect() const {
    if (arcs_.empty()) return "curve has no arcs";
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      if (auto why = arcs_[i].defect()) return "arc " + std::to_string(i) + ": " + *why;
    }
    for (std::size_t i = 0; i + 1 < arcs_.size(); ++i) {
      const double gap = distance(arcs_[i].end(), arcs_[i + 1].start());
      if (gap > kPositionTol) {
        return "arcs " + std::to_string(i) + " and " + std::to_string(i + 1) +
               " are not joined (gap " + std::to_string(gap) + " m)";
      }
      const Vec2 t0 = arcs_[i].end_tangent();
      const Vec2 t1 = arcs_[i + 1].start_tangent();
      const double turn = std::abs(std::atan2(cross(t0, t1), dot(t0, t1)));
      if (turn > kTangentTol) {
        return "arcs " + std::to_string(i) + " and " + std::to_string(i + 1) +
               " are not tangent (" + std::to_string(turn) + " rad)";
      }
    }
    if (!(length() > 0.0) || !std::isfinite(length())) return "curve length must be positive";
    return std::nullopt;
  }

 private:
  std::vector<Arc> arcs_;
};

inline double distance_to_curve(Vec2 p, const ApwCurve& curve) {
  double best = INFINITY;
  for (const Arc& a : curve.arcs()) best = std::min(best, distance_to_arc(p, a));
  return best;
}

/// Centre and radius of the circle through three points.
struct Circle {
  Vec2 centre;
  double radius = 0.0;
};

inline Circle circle_through(Vec2 p1, Vec2 p2, Vec2 p3) {
  const Vec2 b = p2 - p1;
  const Vec2 c = p3 - p1;
  const double span = std::max({norm(b), norm(c), distance(p2, p3)});
  const double twice_area = cross(b, c);
  if (!(std::abs(twice_area) * 0.5 >= 1e-9 * span * span) || span == 0.0) {
    throw Error(ErrorKind::CollinearPoints, "points are collinear or coincident");
  }
  const double denom = 2.0 * twice_area;
  const double b2 = dot(b, b);
  const double c2 = dot(c, c);
  const Vec2 u{(c.y * b2 - b.y * c2) / denom, (b.x * c2 - c.x * b2) / denom};
  return {p1 + u, norm(u)};
}

/// Arc from p_start to p_end that passes through p_mid.
inline Arc arc_from_three_points(Vec2 p_start, Vec2 p_mid, Vec2 p_end) {
  const Circle c = circle_through(p_start, p_mid, p_end);
  const double a0 = angle_of(p_start - c.centre);
  const double ccw_end = wrap_positive(angle_of(p_end - c.centre) - a0);
  const double ccw_mid = wrap_positive(angle_of(p_mid - c.centre) - a0);
  const double sweep = ccw_mid < ccw_end ? ccw_end : ccw_end - kTwoPi;
  return {c.centre, c.radius, a0, sweep};
}

/// Parallel curve at signed distance s along the left normal. Centres and
/// sweeps are kept; each radius moves by s toward or away from its centre.
inline ApwCurve offset_apw(const ApwCurve& curve, double s) {
  std::vector<Arc> out;
  out.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    Arc a = curve[i];
    // The left normal points at the centre on counter-clockwise arcs.
    a.radius = a.radius - a.orientation() * s;
    if (!(a.radius > 0.0)) {
      throw Error(ErrorKind::OffsetCollapse,
                  "offset " + std::to_string(s) + " m collapses arc " + std::to_string(i), 0, i);
    }
    out.push_back(a);
  }
  return ApwCurve(std::move(out));
}

}  // namespace agroline

#endif  // AGROLINE_ARC_HPP
