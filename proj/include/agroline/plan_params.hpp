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

#ifndef AGROLINE_PLAN_PARAMS_HPP
#define AGROLINE_PLAN_PARAMS_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "agroline/error.hpp"

namespace agroline {

/// Machine and agronomic limits. Defaults are the sugar-cane constants.
struct PlanParams {
  double spacing = 3.0;        // groove spacing, m
  double min_radius = 50.0;    // tightest tractor turn, m
  double max_slope_deg = 5.0;  // steepest tilt, degrees
  double max_step = 10.0;      // boundary sampling step, m
  double de0 = 2.0;            // initial level offset of the prototype, m
  double de_floor = 1e-6;
  std::size_t max_iters = 60;

  double tie_tolerance = 0.01;       // extreme-level ties, m
  double drainage_tolerance = 0.01;  // m
  double flat_threshold = 0.01;      // m
  double slope_step = 1.0;           // profile sampling, m
  double extremity_gain = 5.0;       // boundary travel per metre of de
  double min_piece = 0.5;            // clipped pieces shorter than this are dropped, m

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::Validation, std::string(name) + " must be positive");
      }
    };
    positive(spacing, "spacing");
    positive(min_radius, "min_radius");
    positive(max_slope_deg, "max_slope_deg");
    positive(max_step, "max_step");
    positive(de0, "de0");
    positive(de_floor, "de_floor");
    positive(slope_step, "slope_step");
    positive(extremity_gain, "extremity_gain");
    if (max_iters == 0) throw Error(ErrorKind::Validation, "max_iters must be positive");
    if (!(spacing < min_radius)) {
      throw Error(ErrorKind::Validation, "spacing must be smaller than min_radius");
    }
  }
};

}  // namespace agroline

#endif  // AGROLINE_PLAN_PARAMS_HPP
