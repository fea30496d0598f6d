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

#ifndef AGROLINE_SITE_HPP
#define AGROLINE_SITE_HPP

#include <string_view>

#include "agroline/geometry.hpp"
#include "agroline/ingest.hpp"
#include "agroline/master_line.hpp"
#include "agroline/plan_params.hpp"
#include "agroline/surface.hpp"

namespace agroline {

/// Parsed terrain and plot with the fitted surface.
struct Site {
  LevelCurveSet terrain;
  PolynomialSurface surface;
  PlotPolygon plot;
  bool convex = false;
  ExtremeLevels extremes;
};

inline Site load_site(std::string_view terrain_text, std::string_view plot_text,
                      const PlanParams& params = {}) {
  LevelCurveSet terrain = parse_level_curves(terrain_text);
  PlotPolygon plot = parse_plot(plot_text);
  PolynomialSurface surface = fit_surface(build_sample_grid(terrain));
  BoundarySample sample = resample_boundary(plot, params.max_step);
  fill_elevations(sample, surface);
  const ExtremeLevels extremes = find_extremes(sample, params.tie_tolerance);
  const bool convex = is_convex(plot);
  return {std::move(terrain), std::move(surface), std::move(plot), convex, extremes};
}

}  // namespace agroline

#endif  // AGROLINE_SITE_HPP
