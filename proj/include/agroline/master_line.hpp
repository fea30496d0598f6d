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

#ifndef AGROLINE_MASTER_LINE_HPP
#define AGROLINE_MASTER_LINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agroline/arc.hpp"
#include "agroline/boundary.hpp"
#include "agroline/error.hpp"
#include "agroline/plan_params.hpp"
#include "agroline/surface.hpp"

namespace agroline {

/// Evaluates the surface at every boundary sample.
inline void fill_elevations(BoundarySample& sample, const PolynomialSurface& surface) {
  sample.zc.resize(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) sample.zc[i] = surface(sample.points[i]);
}

struct ExtremeLevels {
  std::size_t h_index = 0;
  std::size_t l_index = 0;
  double H = 0.0;
  double L = 0.0;

  bool flat(double threshold = 0.01) const { return H - L < threshold; }
};

/// Highest and lowest boundary samples. Among samples within `tie` of either
/// extreme, the pair farthest apart wins; the first such pair on exact ties.
inline ExtremeLevels find_extremes(const BoundarySample& sample, double tie = 0.01) {
  if (sample.size() < 2 || sample.zc.size() != sample.size()) {
    throw Error(ErrorKind::Validation, "boundary sample needs elevations at two or more points");
  }
  const auto [lo, hi] = std::minmax_element(sample.zc.begin(), sample.zc.end());
  ExtremeLevels out;
  out.H = *hi;
  out.L = *lo;
  std::vector<std::size_t> highs;
  std::vector<std::size_t> lows;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (out.H - sample.zc[i] <= tie) highs.push_back(i);
    if (sample.zc[i] - out.L <= tie) lows.push_back(i);
  }
  double best = -1.0;
  for (std::size_t h : highs) {
    for (std::size_t l : lows) {
      if (h == l) continue;
      const double d = distance(sample.points[h], sample.points[l]);
      if (d > best) {
        best = d;
        out.h_index = h;
        out.l_index = l;
      }
    }
  }
  return out;
}

/// Boundary point with its distance along the boundary from vertex 0.
struct BoundaryPoint {
  Vec2 point;
  double station = 0.0;
};

/// Point of the sample polyline at boundary station s (wrapping).
inline Vec2 sample_point_at(const BoundarySample& sample, double s) {
  const std::size_t n = sample.size();
  s = std::fmod(s, sample.perimeter);
  if (s < 0) s += sample.perimeter;
  auto it = std::upper_bound(sample.station.begin(), sample.station.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - sample.station.begin()) - 1;
  const std::size_t j = (i + 1) % n;
  const double end = j == 0 ? sample.perimeter : sample.station[j];
  const double len = end - sample.station[i];
  if (!(len > 0.0)) return sample.points[i];
  return sample.points[i] + (sample.points[j] - sample.points[i]) * ((s - sample.station[i]) / len);
}

/// Places where the linearly interpolated boundary elevation equals `level`.
inline std::vector<BoundaryPoint> level_crossings(const BoundarySample& sample, double level) {
  std::vector<BoundaryPoint> out;
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double a = sample.zc[i] - level;
    const double b = sample.zc[j] - level;
    if (a == 0.0) {
      out.push_back({sample.points[i], sample.station[i]});
    } else if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      const double t = a / (a - b);
      const double end = j == 0 ? sample.perimeter : sample.station[j];
      out.push_back({sample.points[i] + (sample.points[j] - sample.points[i]) * t,
                     sample.station[i] + (end - sample.station[i]) * t});
    }
  }
  return out;
}

/// Initial three-point construction of the master line.
struct Prototype {
  Vec2 mp;
  double zp = 0.0;
  BoundaryPoint e1;
  BoundaryPoint e2;
  double de = 0.0;
};

/// Midpoint of the extreme pair, and the farthest pair of boundary points at
/// level zp + de.
inline Prototype build_prototype(const BoundarySample& sample, const ExtremeLevels& extremes,
                                 const PolynomialSurface& surface, double de) {
  Prototype p;
  p.mp = (sample.points[extremes.h_index] + sample.points[extremes.l_index]) * 0.5;
  p.zp = surface(p.mp);
  p.de = de;
  const auto crossings = level_crossings(sample, p.zp + de);
  double best = 0.0;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    for (std::size_t j = i + 1; j < crossings.size(); ++j) {
      const double d = distance(crossings[i].point, crossings[j].point);
      if (d > best) {
        best = d;
        p.e1 = crossings[i];
        p.e2 = crossings[j];
      }
    }
  }
  if (!(best > 0.0)) {
    throw Error(ErrorKind::NoLevelCrossing,
                "fewer than two boundary crossings at level " + std::to_string(p.zp + de));
  }
  return p;
}

/// Line count estimate from the centre's distance range over the boundary.
inline long line_estimate(double max_distance, double min_distance, double spacing) {
  return static_cast<long>(std::ceil((max_distance - min_distance) / spacing - 1e-9));
}

enum class OptimizerExit { Settled, DeFloor, IterationCap };

inline const char* to_string(OptimizerExit e) {
  switch (e) {
    case OptimizerExit::Settled: return "settled";
    case OptimizerExit::DeFloor: return "de floor";
    case OptimizerExit::IterationCap: return "iteration cap";
  }
  return "";
}

struct TraceStep {
  double de = 0.0;
  BoundaryPoint e1;
  BoundaryPoint e2;
  Vec2 centre;
  double radius = 0.0;
  double d = 0.0;
  double max = 0.0;
  long naf = 0;
  long nbf = 0;
};

struct MasterResult {
  Arc arc;
  Vec2 mp;
  BoundaryPoint e1;
  BoundaryPoint e2;
  double d = 0.0;
  double max = 0.0;
  long naf = 0;
  long nbf = 0;
  std::vector<TraceStep> trace;  // entry 0 is the prototype
  std::size_t chosen = 0;         // trace index of the returned arc
  OptimizerExit exit = OptimizerExit::Settled;
};

namespace detail {

/// Even-odd test against the sample polyline.
inline bool encloses(const std::vector<Vec2>& ring, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)) {
      inside = !inside;
    }
  }
  return inside;
}

struct Candidate {
  BoundaryPoint e1;
  BoundaryPoint e2;
  Circle circle;
  DistanceRange range;
};

inline std::optional<Candidate> evaluate(const BoundarySample& sample, Vec2 mp, double s1,
                                         double s2) {
  const BoundaryPoint a{sample_point_at(sample, s1), s1};
  const BoundaryPoint b{sample_point_at(sample, s2), s2};
  try {
    const Circle c = circle_through(a.point, mp, b.point);
    DistanceRange range = distance_range(c.centre, sample.points);
    if (encloses(sample.points, c.centre)) range.min = -range.min;
    return Candidate{a, b, c, range};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CollinearPoints) return std::nullopt;
    throw;
  }
}

}  // namespace detail

/// The optimization loop. Each pass halves de and slides the extremities
/// along the boundary, keeping mp fixed; a move is kept only when it pushes
/// the centre farther from the boundary. A centre inside the plot counts as
/// a negative distance. The slide is extremity_gain * de, or
/// de / de0 of a quarter perimeter while the centre is still within
/// min_radius of the boundary.
inline MasterResult optimize_master_line(const Prototype& proto, const BoundarySample& sample,
                                         const PlanParams& params) {
  auto first = detail::evaluate(sample, proto.mp, proto.e1.station, proto.e2.station);
  if (!first) throw Error(ErrorKind::CollinearPoints, "prototype points are collinear");

  MasterResult r;
  r.mp = proto.mp;
  long nbf = 999;
  long naf = 999;
  double de = proto.de;
  detail::Candidate cur = *first;
  double d = cur.range.min;
  r.trace.push_back({de, cur.e1, cur.e2, cur.circle.centre, cur.circle.radius, d,
                     cur.range.max, naf, nbf});

  std::size_t iter = 0;
  while ((d < params.min_radius || naf <= nbf) && de > params.de_floor &&
         iter < params.max_iters) {
    ++iter;
    nbf = naf;
    de /= 2;
    double step = params.extremity_gain * de;
    if (d < params.min_radius) step = std::max(step, sample.perimeter / 4 * de / params.de0);

    // Moves may flatten the arc but never carry it through alignment.
    const double turn = cross(proto.mp - cur.e1.point, cur.e2.point - cur.e1.point);
    auto same_turn = [&](const std::optional<detail::Candidate>& c) {
      return c && cross(proto.mp - c->e1.point, c->e2.point - c->e1.point) * turn > 0.0;
    };
    auto best_move = [&](bool first_end) {
      double s_best = first_end ? cur.e1.station : cur.e2.station;
      double d_best = cur.range.min;
      for (double delta : {-step, step}) {
        const double s = s_best + delta;
        auto c = first_end ? detail::evaluate(sample, proto.mp, s, cur.e2.station)
                           : detail::evaluate(sample, proto.mp, cur.e1.station, s);
        if (same_turn(c) && c->range.min > d_best) {
          d_best = c->range.min;
          s_best = s;
        }
      }
      return std::pair{s_best, d_best};
    };
    const auto [s1, d1] = best_move(true);
    const auto [s2, d2] = best_move(false);
    auto both = detail::evaluate(sample, proto.mp, s1, s2);
    if (same_turn(both) && both->range.min >= std::max(d1, d2)) {
      cur = *both;
    } else if (d1 >= d2) {
      cur = *detail::evaluate(sample, proto.mp, s1, cur.e2.station);
    } else {
      cur = *detail::evaluate(sample, proto.mp, cur.e1.station, s2);
    }

    d = cur.range.min;
    naf = line_estimate(cur.range.max, d, params.spacing);
    r.trace.push_back({de, cur.e1, cur.e2, cur.circle.centre, cur.circle.radius, d,
                       cur.range.max, naf, nbf});
  }
  if (!(d < params.min_radius || naf <= nbf)) {
    r.exit = OptimizerExit::Settled;
  } else if (!(de > params.de_floor)) {
    r.exit = OptimizerExit::DeFloor;
  } else {
    r.exit = OptimizerExit::IterationCap;
  }

  // Best so far: clear of min_radius first, then fewest lines, latest on ties.
  auto naf_of = [&](const TraceStep& t) {
    return line_estimate(t.max, t.d, params.spacing);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    const TraceStep& a = r.trace[i];
    const TraceStep& b = r.trace[best];
    const bool a_ok = a.d >= params.min_radius;
    const bool b_ok = b.d >= params.min_radius;
    if (a_ok != b_ok) {
      if (a_ok) best = i;
    } else if (a_ok ? naf_of(a) <= naf_of(b) : a.d >= b.d) {
      best = i;
    }
  }
  const TraceStep& t = r.trace[best];
  r.chosen = best;
  r.e1 = t.e1;
  r.e2 = t.e2;
  r.arc = arc_from_three_points(t.e1.point, proto.mp, t.e2.point);
  r.d = t.d;
  r.max = t.max;
  r.naf = naf_of(t);
  r.nbf = t.nbf;
  return r;
}

struct SlopeSample {
  double s = 0.0;
  double pitch_deg = 0.0;  // along the travel direction
  double tilt_deg = 0.0;   // steepest descent under the tractor
};

struct SlopeProfile {
  std::vector<SlopeSample> samples;
  double max_pitch_deg = 0.0;
  double max_tilt_deg = 0.0;
};

inline SlopeProfile slope_profile(const ApwCurve& curve, const PolynomialSurface& surface,
                                  double sample_step = 1.0) {
  SlopeProfile p;
  for (double s : curve.stations(sample_step)) {
    const Vec2 g = surface.gradient(curve.point_at(s));
    const double pitch = deg(std::atan(std::abs(dot(g, curve.tangent_at(s)))));
    const double tilt = deg(std::atan(norm(g)));
    p.samples.push_back({s, pitch, tilt});
    p.max_pitch_deg = std::max(p.max_pitch_deg, pitch);
    p.max_tilt_deg = std::max(p.max_tilt_deg, tilt);
  }
  return p;
}

}  // namespace agroline

#endif  // AGROLINE_MASTER_LINE_HPP
