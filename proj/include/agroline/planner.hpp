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

#ifndef AGROLINE_PLANNER_HPP
#define AGROLINE_PLANNER_HPP

#include <optional>

#include "agroline/concave.hpp"
#include "agroline/master_line.hpp"
#include "agroline/parallels.hpp"
#include "agroline/plan.hpp"
#include "agroline/plan_params.hpp"
#include "agroline/subdivision.hpp"

namespace agroline {

/// Convex plots plan directly; concave plots need subdivision pairs.
inline CoveragePlan plan_plot(const PlotPolygon& plot, const PolynomialSurface& surface,
                              const std::optional<SubdivisionPairs>& pairs,
                              const PlanParams& params) {
  if (pairs && !pairs->pairs.empty()) return plan_concave(plot, *pairs, surface, params);
  if (!is_convex(plot)) {
    throw Error(ErrorKind::Validation, "concave plot needs subdivision pairs");
  }
  return plan_convex(plot, surface, params);
}

}  // namespace agroline

#endif  // AGROLINE_PLANNER_HPP
