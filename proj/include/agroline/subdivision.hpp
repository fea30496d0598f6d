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

#ifndef AGROLINE_SUBDIVISION_HPP
#define AGROLINE_SUBDIVISION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agroline/boundary.hpp"
#include "agroline/error.hpp"
#include "agroline/hull.hpp"
#include "agroline/ingest.hpp"
#include "agroline/polygon.hpp"

namespace agroline {

struct Chord {
  Vec2 a;
  Vec2 b;
  std::size_t left = 0;  // regions on either side
  std::size_t right = 0;

  Vec2 midpoint() const { return (a + b) * 0.5; }
};

struct Subdivision {
  std::vector<PlotPolygon> regions;
  std::vector<bool> concave;  // still concave after the split
  std::vector<Chord> chords;  // in pair order
};

namespace detail {

constexpr double kSnapVertex = 1e-6;

inline bool same_point(Vec2 a, Vec2 b) { return distance(a, b) <= kSnapVertex; }

/// Boundary point nearest p; a vertex when one is within kSnapVertex.
inline Vec2 snap_to_boundary(const PlotPolygon& plot, Vec2 p) {
  Vec2 q = plot.closest_boundary_point(p).first;
  for (const Vec2& v : plot.vertices()) {
    if (same_point(v, q)) return v;
  }
  return q;
}

inline void insert_on_loop(std::vector<Vec2>& loop, Vec2 q) {
  for (const Vec2& v : loop) {
    if (same_point(v, q)) return;
  }
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec2 a = loop[i];
    const Vec2 b = loop[(i + 1) % loop.size()];
    if (distance_to_segment(q, a, b) <= 1e-9) {
      loop.insert(loop.begin() + static_cast<std::ptrdiff_t>(i + 1), q);
      return;
    }
  }
  throw Error(ErrorKind::InvalidChord, "chord endpoint is not on the boundary");
}

inline std::optional<std::size_t> find_vertex(std::span<const Vec2> loop, Vec2 p) {
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (same_point(loop[i], p)) return i;
  }
  return std::nullopt;
}

inline std::string chord_text(std::size_t k) { return "chord " + std::to_string(k + 1); }

}  // namespace detail

/// Splits the plot along the chords, one region at a time.
inline Subdivision subdivide_plot(const PlotPolygon& plot, const SubdivisionPairs& pairs) {
  std::vector<Vec2> loop(plot.vertices().begin(), plot.vertices().end());
  if (plot.signed_area() < 0) std::reverse(loop.begin(), loop.end());

  Subdivision out;
  for (const auto& [p, q] : pairs.pairs) {
    Chord c;
    c.a = detail::snap_to_boundary(plot, p);
    c.b = detail::snap_to_boundary(plot, q);
    detail::insert_on_loop(loop, c.a);
    detail::insert_on_loop(loop, c.b);
    out.chords.push_back(c);
  }

  std::vector<std::vector<Vec2>> regions{loop};
  for (std::size_t k = 0; k < out.chords.size(); ++k) {
    const Chord& c = out.chords[k];
    if (detail::same_point(c.a, c.b)) {
      throw Error(ErrorKind::InvalidChord, detail::chord_text(k) + " has coincident endpoints");
    }
    bool split = false;
    for (std::size_t r = 0; r < regions.size() && !split; ++r) {
      const auto& R = regions[r];
      const auto ia = detail::find_vertex(R, c.a);
      const auto ib = detail::find_vertex(R, c.b);
      if (!ia || !ib) continue;
      const PlotPolygon poly(R);
      if (point_in_polygon(c.midpoint(), poly) != Location::Inside) continue;
      for (std::size_t i = 0; i < R.size(); ++i) {
        const std::size_t j = (i + 1) % R.size();
        if (i == *ia || i == *ib || j == *ia || j == *ib) continue;
        if (segments_intersect(c.a, c.b, R[i], R[j])) {
          throw Error(ErrorKind::InvalidChord, detail::chord_text(k) + " leaves the plot");
        }
      }
      auto walk = [&](std::size_t from, std::size_t to) {
        std::vector<Vec2> piece;
        for (std::size_t i = from;; i = (i + 1) % R.size()) {
          piece.push_back(R[i]);
          if (i == to) break;
        }
        return piece;
      };
      std::vector<Vec2> first = walk(*ia, *ib);
      std::vector<Vec2> second = walk(*ib, *ia);
      for (const auto* piece : {&first, &second}) {
        try {
          PlotPolygon check(*piece);
        } catch (const Error&) {
          throw Error(ErrorKind::InvalidChord,
                      detail::chord_text(k) + " cuts off a degenerate region");
        }
      }
      regions[r] = std::move(first);
      regions.push_back(std::move(second));
      split = true;
    }
    if (!split) {
      throw Error(ErrorKind::InvalidChord,
                  detail::chord_text(k) + " does not run through the plot interior");
    }
  }

  for (auto& R : regions) {
    out.regions.emplace_back(std::move(R));
    out.concave.push_back(!is_convex(out.regions.back()));
  }
  for (Chord& c : out.chords) {
    std::vector<std::size_t> sides;
    for (std::size_t r = 0; r < out.regions.size(); ++r) {
      const auto& V = out.regions[r].vertices();
      const auto ia = detail::find_vertex(V, c.a);
      const auto ib = detail::find_vertex(V, c.b);
      if (ia && ib && ((*ia + 1) % V.size() == *ib || (*ib + 1) % V.size() == *ia)) {
        sides.push_back(r);
      }
    }
    if (sides.size() != 2) throw Error(ErrorKind::InvalidChord, "chord adjacency is ambiguous");
    c.left = sides[0];
    c.right = sides[1];
  }
  return out;
}

}  // namespace agroline

#endif  // AGROLINE_SUBDIVISION_HPP
