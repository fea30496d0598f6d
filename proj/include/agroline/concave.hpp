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

#ifndef AGROLINE_CONCAVE_HPP
#define AGROLINE_CONCAVE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agroline/plan.hpp"
#include "agroline/subdivision.hpp"

namespace agroline {

/// Two trimmed arcs and the fillet between them. Zero-length pieces are
/// absent.
struct Blend {
  std::vector<Arc> arcs;
  double radius = 0.0;  // 0 when no fillet was needed
};

namespace detail {

inline std::vector<Vec2> circle_intersections(Vec2 p0, double r0, Vec2 p1, double r1) {
  const double d = distance(p0, p1);
  if (!(d > 0.0) || d > r0 + r1 || d < std::abs(r0 - r1)) return {};
  const Vec2 u = (p1 - p0) / d;
  const double a = (r0 * r0 - r1 * r1 + d * d) / (2 * d);
  const double h = std::sqrt(std::max(0.0, r0 * r0 - a * a));
  const Vec2 base = p0 + u * a;
  if (h == 0.0) return {base};
  return {base + perp(u) * h, base - perp(u) * h};
}

/// Tangents agree closely enough that offsets by hundreds of metres stay
/// joined.
inline bool same_direction(Vec2 a, Vec2 b) {
  return dot(a, b) > 0.0 && std::abs(std::atan2(cross(a, b), dot(a, b))) <= 1e-10;
}

inline void push_arc(std::vector<Arc>& out, const Arc& a) {
  if (a.length() > 1e-9) out.push_back(a);
}

/// Tangent point on `arc` of a circle centred at f with signed turn sF * R;
/// returns the angular parameter along the arc, if the point lies on it.
inline std::optional<std::pair<Vec2, double>> tangency(const Arc& arc, Vec2 f, double R, int sF) {
  const double den = sF * R - arc.orientation() * arc.radius;
  if (std::abs(den) < 1e-9) return std::nullopt;
  const Vec2 left = (f - arc.centre) / den;
  const Vec2 p = arc.centre - left * (arc.orientation() * arc.radius);
  const double t = arc.angular_param(angle_of(p - arc.centre));
  if (t > std::abs(arc.sweep) + 1e-12) return std::nullopt;
  return std::pair{p, std::min(t, std::abs(arc.sweep))};
}

}  // namespace detail

/// Fillet of radius R leaving `a` and arriving on `b` with G1 contact; the
/// one with the smallest turn when several exist.
inline std::optional<Blend> fillet(const Arc& a, const Arc& b, double R) {
  std::optional<Blend> best;
  double best_sweep = INFINITY;
  for (int sF : {1, -1}) {
    const double ra = std::abs(a.radius - sF * a.orientation() * R);
    const double rb = std::abs(b.radius - sF * b.orientation() * R);
    for (Vec2 f : detail::circle_intersections(a.centre, ra, b.centre, rb)) {
      const auto ta = detail::tangency(a, f, R, sF);
      const auto tb = detail::tangency(b, f, R, sF);
      if (!ta || !tb) continue;
      const Arc head = a.slice(0.0, ta->second);
      const Arc tail = b.slice(tb->second, std::abs(b.sweep));
      const Vec2 p = ta->second > 0.0 ? head.end() : a.start();
      const Vec2 heading = a.tangent_at(ta->second * a.radius);
      const Vec2 centre = p + perp(heading) * (sF * R);
      const double start = angle_of(p - centre);
      const Vec2 q = tb->second < std::abs(b.sweep) ? tail.start() : b.end();
      const double sweep = sF * wrap_positive(sF * (angle_of(q - centre) - start));
      const Arc fa{centre, R, start, sweep};
      const Vec2 arrival = sweep != 0.0 ? fa.end() : p;
      if (distance(arrival, q) > 1e-8) continue;
      if (sweep != 0.0 &&
          !detail::same_direction(fa.end_tangent(), b.tangent_at(tb->second * b.radius))) {
        continue;
      }
      if (std::abs(sweep) >= best_sweep) continue;
      best_sweep = std::abs(sweep);
      Blend blend;
      detail::push_arc(blend.arcs, head);
      if (sweep != 0.0) detail::push_arc(blend.arcs, fa);
      detail::push_arc(blend.arcs, tail);
      blend.radius = R;
      best = std::move(blend);
    }
  }
  return best;
}

/// Joins arc a (travelled first) to arc b. Cocircular arcs merge; otherwise
/// the largest fillet with radius in [min_radius, max_radius] is inserted.
inline std::optional<Blend> join_arcs(const Arc& a, const Arc& b, double min_radius,
                                      double max_radius) {
  const double scale = std::max(1.0, std::max(a.radius, b.radius));
  if (a.orientation() == b.orientation() && distance(a.centre, b.centre) <= 1e-9 * scale &&
      std::abs(a.radius - b.radius) <= 1e-9 * scale) {
    const double tb = a.angular_param(b.start_angle) + std::abs(b.sweep);
    const double total = std::min(kTwoPi, std::max(std::abs(a.sweep), tb));
    return Blend{{Arc{a.centre, a.radius, a.start_angle, a.orientation() * total}}, 0.0};
  }
  if (distance(a.end(), b.start()) <= ApwCurve::kPositionTol &&
      detail::same_direction(a.end_tangent(), b.start_tangent())) {
    return Blend{{a, b}, 0.0};
  }
  constexpr int kGrid = 200;
  if (!(max_radius > min_radius)) max_radius = min_radius;
  const double ratio = max_radius / min_radius;
  auto grid = [&](int i) { return min_radius * std::pow(ratio, double(i) / (kGrid - 1)); };
  int found = -1;
  for (int i = kGrid - 1; i >= 0; --i) {
    if (fillet(a, b, grid(i))) {
      found = i;
      break;
    }
  }
  if (found < 0) return std::nullopt;
  double lo = grid(found);
  if (found + 1 < kGrid) {
    double hi = grid(found + 1);
    for (int k = 0; k < 60 && hi - lo > 1e-9 * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (fillet(a, b, mid) ? lo : hi) = mid;
    }
  }
  return fillet(a, b, lo);
}

namespace detail {

/// Regions along the longest chain of chord adjacencies; the lower index
/// starts when both ends qualify.
inline std::vector<std::size_t> region_path(const Subdivision& sub) {
  const std::size_t n = sub.regions.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Chord& c : sub.chords) {
    adj[c.left].push_back(c.right);
    adj[c.right].push_back(c.left);
  }
  auto farthest = [&](std::size_t from) {
    std::vector<long> dist(n, -1);
    std::vector<std::size_t> parent(n, n);
    std::vector<std::size_t> queue{from};
    dist[from] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (std::size_t m : adj[queue[q]]) {
        if (dist[m] < 0) {
          dist[m] = dist[queue[q]] + 1;
          parent[m] = queue[q];
          queue.push_back(m);
        }
      }
    }
    std::size_t far = from;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i] > dist[far]) far = i;
    }
    std::vector<std::size_t> path;
    for (std::size_t v = far; v != n; v = parent[v]) path.push_back(v);
    return path;  // far ... from
  };
  std::vector<std::size_t> path = farthest(farthest(0).front());
  if (path.back() < path.front()) std::reverse(path.begin(), path.end());
  return path;
}

inline const Chord& chord_between(const Subdivision& sub, std::size_t r, std::size_t s) {
  for (const Chord& c : sub.chords) {
    if ((c.left == r && c.right == s) || (c.left == s && c.right == r)) return c;
  }
  throw Error(ErrorKind::InvalidChord, "regions are not adjacent");
}

}  // namespace detail

/// Plan for a concave plot split by the user's chords. Region masters are
/// planned independently, chained across the chords, and judged over the
/// whole plot.
inline CoveragePlan plan_concave(const PlotPolygon& plot, const SubdivisionPairs& pairs,
                                 const PolynomialSurface& surface, const PlanParams& params) {
  params.validate();
  validate_pairs(pairs, plot);
  const Subdivision sub = subdivide_plot(plot, pairs);

  std::vector<RegionPlan> regions;
  bool flat = false;
  OptimizerExit exit = OptimizerExit::Settled;
  long naf = 0;
  long nbf = 0;
  for (std::size_t r = 0; r < sub.regions.size(); ++r) {
    MasterPlan mp = plan_master(sub.regions[r], surface, params);
    flat = flat || mp.flat;
    if (mp.optimization.exit == OptimizerExit::IterationCap) exit = OptimizerExit::IterationCap;
    naf += mp.optimization.naf;
    nbf += mp.optimization.nbf;
    regions.push_back({sub.regions[r], std::move(mp), sub.concave[r], std::nullopt});
  }

  const std::vector<std::size_t> path = detail::region_path(sub);
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Arc a = regions[path[i]].master.optimization.arc;
    if (i == 0 && path.size() > 1) {
      const Vec2 m = detail::chord_between(sub, path[0], path[1]).midpoint();
      if (distance(a.start(), m) < distance(a.end(), m)) a = a.reversed();
    } else if (i > 0) {
      const Vec2 m = detail::chord_between(sub, path[i - 1], path[i]).midpoint();
      if (distance(a.end(), m) < distance(a.start(), m)) a = a.reversed();
    }
    arcs.push_back(a);
  }

  const auto box = plot.bounds();
  const double extent = std::hypot(box.xmax - box.xmin, box.ymax - box.ymin);
  std::vector<std::vector<Arc>> chains{{arcs.front()}};
  std::vector<std::string> notes;
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    std::vector<Arc>& chain = chains.back();
    const auto blend = join_arcs(chain.back(), arcs[i], params.min_radius, 4 * extent);
    if (!blend) {
      notes.push_back("blend infeasible between regions " + std::to_string(path[i - 1] + 1) +
                      " and " + std::to_string(path[i] + 1));
      chains.push_back({arcs[i]});
      continue;
    }
    chain.pop_back();
    chain.insert(chain.end(), blend->arcs.begin(), blend->arcs.end());
  }
  std::size_t longest = 0;
  auto chain_length = [](const std::vector<Arc>& c) {
    double l = 0.0;
    for (const Arc& a : c) l += a.length();
    return l;
  };
  for (std::size_t i = 1; i < chains.size(); ++i) {
    if (chain_length(chains[i]) > chain_length(chains[longest])) longest = i;
  }
  ApwCurve master(chains[longest]);

  ParallelFamily family = generate_parallels(master, plot, params);
  const BoundarySample sample = resample_boundary(plot, params.max_step);
  Diagnostics diag = diagnose(master, family, plot, sample, surface, params, exit, naf, nbf);
  if (chains.size() > 1) diag.conditions[1] = false;
  if (path.size() < sub.regions.size()) {
    notes.push_back("some regions are off the master path");
    diag.conditions[3] = false;
  }
  for (std::size_t r = 0; r < regions.size(); ++r) {
    RegionPlan& rp = regions[r];
    if (rp.concave) notes.push_back("region " + std::to_string(r + 1) + " is still concave");
    const MasterResult& opt = rp.master.optimization;
    const ApwCurve rm({opt.arc});
    const ParallelFamily rf = generate_parallels(rm, rp.region, params);
    const BoundarySample rs = resample_boundary(rp.region, params.max_step);
    rp.diagnostics = diagnose(rm, rf, rp.region, rs, surface, params, opt.exit, opt.naf, opt.nbf);
  }
  if (flat) notes.insert(notes.begin(), "flat plot: lines follow the long axis");
  diag.notes.insert(diag.notes.end(), notes.begin(), notes.end());

  return CoveragePlan{std::move(master), std::move(family), std::move(diag), std::move(regions),
                      flat};
}

}  // namespace agroline

#endif  // AGROLINE_CONCAVE_HPP
