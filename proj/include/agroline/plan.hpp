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

#ifndef AGROLINE_PLAN_HPP
#define AGROLINE_PLAN_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "agroline/boundary.hpp"
#include "agroline/hull.hpp"
#include "agroline/master_line.hpp"
#include "agroline/parallels.hpp"

namespace agroline {

inline constexpr std::array<const char*, 5> kConditionNames = {
    "slope", "turning radius", "groove spacing", "line count", "drainage"};

/// Measured values behind the five condition verdicts.
struct Diagnostics {
  double max_tilt_deg = 0.0;
  double max_pitch_deg = 0.0;
  double min_radius = INFINITY;  // over in-plot pieces
  double centre_distance = INFINITY;
  bool centre_in_plot = false;
  bool collapsed = false;
  double spacing_error = 0.0;
  OptimizerExit exit = OptimizerExit::Settled;
  long naf = 0;
  long nbf = 0;
  std::size_t line_count = 0;
  std::vector<LineDrainage> drainage;
  std::size_t drainage_failures = 0;
  std::size_t flat_lines = 0;
  std::array<bool, 5> conditions{};
  std::vector<std::string> notes;

  bool all_pass() const {
    for (bool c : conditions) {
      if (!c) return false;
    }
    return true;
  }
};

inline std::string angle_not_ok(double angle_deg) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "Angle Not OK (%.2f deg)", angle_deg);
  return buf;
}

/// Checks the master and its family against the five conditions.
inline Diagnostics diagnose(const ApwCurve& master, const ParallelFamily& family,
                            const PlotPolygon& plot, const BoundarySample& sample,
                            const PolynomialSurface& surface, const PlanParams& params,
                            OptimizerExit exit, long naf, long nbf) {
  Diagnostics g;
  g.exit = exit;
  g.naf = naf;
  g.nbf = nbf;
  g.line_count = family.line_count();
  g.collapsed = family.collapsed;

  for (const Arc& a : master.arcs()) {
    g.centre_distance = std::min(g.centre_distance, min_distance_to_points(a.centre, sample.points));
    g.centre_in_plot = g.centre_in_plot || in_plot(a.centre, plot);
  }
  for (std::size_t i = 0; i < family.parallels.size(); ++i) {
    const Parallel& p = family.parallels[i];
    for (const ApwCurve& piece : p.pieces) {
      g.min_radius = std::min(g.min_radius, piece.min_radius());
      const SlopeProfile prof = slope_profile(piece, surface, params.slope_step);
      g.max_tilt_deg = std::max(g.max_tilt_deg, prof.max_tilt_deg);
      g.max_pitch_deg = std::max(g.max_pitch_deg, prof.max_pitch_deg);
    }
    if (i > 0) {
      const double gap = p.offset - family.parallels[i - 1].offset;
      g.spacing_error = std::max(g.spacing_error, std::abs(gap - params.spacing));
    }
  }
  g.drainage = check_drainage(family, surface, params);
  for (const LineDrainage& d : g.drainage) {
    if (!d.pass) ++g.drainage_failures;
    if (d.flat) ++g.flat_lines;
  }

  g.conditions[0] = g.max_tilt_deg <= params.max_slope_deg + 1e-6;
  g.conditions[1] = !g.collapsed && g.min_radius >= params.min_radius - 1e-6;
  g.conditions[2] = g.spacing_error <= 1e-9;
  g.conditions[3] = exit != OptimizerExit::IterationCap && g.line_count > 0;
  g.conditions[4] = g.drainage_failures == 0;

  if (!g.conditions[0]) g.notes.push_back(angle_not_ok(g.max_tilt_deg));
  if (g.collapsed) g.notes.push_back("offset collapsed before the plot was covered");
  if (exit == OptimizerExit::IterationCap) g.notes.push_back("optimizer hit the iteration cap");
  return g;
}

/// Unit ramp rising across the narrowest direction of the plot, so that its
/// level lines run along the long axis.
inline PolynomialSurface long_axis_ramp(const PlotPolygon& plot) {
  const PlotPolygon hull = convex_hull(plot.vertices());
  double best = INFINITY;
  Vec2 up{0.0, 1.0};
  for (std::size_t i = 0; i < hull.size(); ++i) {
    auto [a, b] = hull.edge(i);
    const Vec2 n = perp(unit(b - a));  // inward for a counter-clockwise hull
    double width = 0.0;
    for (const Vec2& v : hull.vertices()) width = std::max(width, dot(v - a, n));
    if (width < best - 1e-9) {
      best = width;
      up = n;
    }
  }
  return PolynomialSurface(2, 2, {0.0, up.y, up.x, 0.0});
}

/// Prototype at de0, halving de until a level crossing exists.
inline std::optional<Prototype> try_prototype(const BoundarySample& sample,
                                              const ExtremeLevels& extremes,
                                              const PolynomialSurface& surface,
                                              const PlanParams& params) {
  for (double de = params.de0; de > params.de_floor; de /= 2) {
    try {
      return build_prototype(sample, extremes, surface, de);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoLevelCrossing) throw;
    }
  }
  return std::nullopt;
}

struct MasterPlan {
  MasterResult optimization;
  Prototype prototype;
  ExtremeLevels extremes;
  bool flat = false;  // built on the long-axis ramp
};

/// Algorithms for one convex region: extremes, prototype, optimization. Flat
/// ground, or ground with no usable level crossing, falls back to a ramp
/// along the region's long axis.
inline MasterPlan plan_master(const PlotPolygon& region, const PolynomialSurface& surface,
                              const PlanParams& params) {
  BoundarySample sample = resample_boundary(region, params.max_step);
  fill_elevations(sample, surface);
  MasterPlan mp;
  mp.extremes = find_extremes(sample, params.tie_tolerance);
  std::optional<Prototype> proto;
  if (!mp.extremes.flat(params.flat_threshold)) {
    proto = try_prototype(sample, mp.extremes, surface, params);
  }
  if (!proto) {
    mp.flat = true;
    const PolynomialSurface ramp = long_axis_ramp(region);
    BoundarySample ramp_sample = sample;
    fill_elevations(ramp_sample, ramp);
    const ExtremeLevels ramp_extremes = find_extremes(ramp_sample, params.tie_tolerance);
    proto = try_prototype(ramp_sample, ramp_extremes, ramp, params);
    if (!proto) throw Error(ErrorKind::NoLevelCrossing, "no level crossing on the boundary");
  }
  mp.prototype = *proto;
  mp.optimization = optimize_master_line(*proto, sample, params);
  return mp;
}

struct RegionPlan {
  PlotPolygon region;
  MasterPlan master;
  bool concave = false;
  std::optional<Diagnostics> diagnostics;
};

struct CoveragePlan {
  ApwCurve master;
  ParallelFamily family;
  Diagnostics diagnostics;
  std::vector<RegionPlan> regions;  // one for a convex plot
  bool flat = false;

  std::size_t line_count() const { return family.line_count(); }
  long naf() const { return diagnostics.naf; }
  long nbf() const { return diagnostics.nbf; }
};

/// Full plan for a convex plot.
inline CoveragePlan plan_convex(const PlotPolygon& plot, const PolynomialSurface& surface,
                                const PlanParams& params) {
  params.validate();
  MasterPlan mp = plan_master(plot, surface, params);
  const MasterResult& opt = mp.optimization;
  ApwCurve master({opt.arc});
  ParallelFamily family = generate_parallels(master, plot, params);
  BoundarySample sample = resample_boundary(plot, params.max_step);
  Diagnostics diag =
      diagnose(master, family, plot, sample, surface, params, opt.exit, opt.naf, opt.nbf);
  if (mp.flat) diag.notes.insert(diag.notes.begin(), "flat plot: lines follow the long axis");
  const bool flat = mp.flat;
  CoveragePlan plan{std::move(master), std::move(family), std::move(diag), {}, flat};
  plan.regions.push_back({plot, std::move(mp), !is_convex(plot), std::nullopt});
  return plan;
}

}  // namespace agroline

#endif  // AGROLINE_PLAN_HPP
