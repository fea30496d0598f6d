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

#ifndef AGROLINE_INGEST_HPP
#define AGROLINE_INGEST_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agroline/error.hpp"
#include "agroline/polygon.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Bounds {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(Vec2 p) const { return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Terrain samples in file order. Consecutive points sharing a height form one
/// level curve.
struct LevelCurveSet {
  std::vector<Point3> points;
  Bounds bounds;

  /// Half-open index ranges of consecutive equal-height runs.
  std::vector<std::pair<std::size_t, std::size_t>> runs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= points.size(); ++i) {
      if (i == points.size() || points[i].z != points[start].z) {
        out.emplace_back(start, i);
        start = i;
      }
    }
    return out;
  }
};

/// User-chosen chords splitting a concave plot. Between one and three pairs.
struct SubdivisionPairs {
  static constexpr double kSnapTolerance = 0.5;
  static constexpr std::size_t kMaxPairs = 3;

  std::vector<std::pair<Vec2, Vec2>> pairs;
};

namespace detail {

struct Row {
  std::size_t line;
  std::vector<double> values;
};

// Splits on LF (CR stripped), tokens on runs of spaces/tabs; blank lines skipped.
inline std::vector<Row> parse_rows(std::string_view text) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Row row{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      const std::string_view token = line.substr(i, j - i);
      double value = 0.0;
      const char* first = token.data();
      const char* last = token.data() + token.size();
      if (!token.empty() && token.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorKind::Format, "non-numeric token '" + std::string(token) + "'",
                    line_no);
      }
      row.values.push_back(value);
      i = j;
    }
    if (!row.values.empty()) rows.push_back(std::move(row));
    if (eol == text.size()) break;
  }
  return rows;
}

inline void require_columns(const Row& row, std::size_t columns) {
  if (row.values.size() != columns) {
    throw Error(ErrorKind::Format,
                "expected " + std::to_string(columns) + " columns, found " +
                    std::to_string(row.values.size()),
                row.line);
  }
}

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00" so formatting is stable under reparse.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

}  // namespace detail

inline Bounds bounds_of(std::span<const Point3> points) {
  Bounds b{points[0].x, points[0].x, points[0].y, points[0].y};
  for (const Point3& p : points) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

inline LevelCurveSet make_level_curves(std::vector<Point3> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "terrain has no points");
  LevelCurveSet set;
  set.bounds = bounds_of(points);
  set.points = std::move(points);
  return set;
}

/// Terrain file: one "x y z" row per sample.
inline LevelCurveSet parse_level_curves(std::string_view text) {
  const auto rows = detail::parse_rows(text);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "terrain file has no data rows");
  std::vector<Point3> points;
  points.reserve(rows.size());
  for (const auto& row : rows) {
    detail::require_columns(row, 3);
    points.push_back({row.values[0], row.values[1], row.values[2]});
  }
  return make_level_curves(std::move(points));
}

/// Plot file: one "x y" row per polygon vertex, in boundary order.
inline PlotPolygon parse_plot(std::string_view text) {
  const auto rows = detail::parse_rows(text);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "plot file has no data rows");
  std::vector<Vec2> vertices;
  for (const auto& row : rows) {
    detail::require_columns(row, 2);
    vertices.push_back({row.values[0], row.values[1]});
  }
  return PlotPolygon(std::move(vertices));
}

/// Checks the snap tolerance and that no two chords cross. Chords may share
/// endpoints.
inline void validate_pairs(const SubdivisionPairs& pairs, const PlotPolygon& plot) {
  if (pairs.pairs.empty()) throw Error(ErrorKind::EmptyInput, "no subdivision pairs");
  if (pairs.pairs.size() > SubdivisionPairs::kMaxPairs) {
    throw Error(ErrorKind::TooManyPairs,
                "at most 3 pairs allowed, got " + std::to_string(pairs.pairs.size()));
  }
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    for (Vec2 p : {pairs.pairs[i].first, pairs.pairs[i].second}) {
      const double d = plot.distance_to_boundary(p);
      if (d > SubdivisionPairs::kSnapTolerance) {
        throw Error(ErrorKind::Validation,
                    "point (" + detail::fixed2(p.x) + ", " + detail::fixed2(p.y) +
                        ") is " + detail::fixed2(d) + " m from the plot boundary",
                    0, i);
      }
    }
  }
  for (std::size_t i = 0; i < pairs.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.pairs.size(); ++j) {
      auto [a, b] = pairs.pairs[i];
      auto [c, d] = pairs.pairs[j];
      const double tol = SubdivisionPairs::kSnapTolerance;
      const bool shared = distance(a, c) <= tol || distance(a, d) <= tol ||
                          distance(b, c) <= tol || distance(b, d) <= tol;
      if (!shared && segments_intersect(a, b, c, d)) {
        throw Error(ErrorKind::Validation,
                    "chords " + std::to_string(i) + " and " + std::to_string(j) + " cross",
                    0, j);
      }
    }
  }
}

/// Saved subdivision file: two-column rows, consecutive rows form a pair.
inline SubdivisionPairs parse_eplot(std::string_view text, const PlotPolygon& plot) {
  const auto rows = detail::parse_rows(text);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "eplot file has no data rows");
  for (const auto& row : rows) detail::require_columns(row, 2);
  if (rows.size() > 2 * SubdivisionPairs::kMaxPairs) {
    throw Error(ErrorKind::TooManyPairs,
                "at most 6 rows (3 pairs) allowed, got " + std::to_string(rows.size()));
  }
  if (rows.size() % 2 != 0) {
    throw Error(ErrorKind::Format,
                "odd number of rows (" + std::to_string(rows.size()) + "); points come in pairs",
                rows.back().line);
  }
  SubdivisionPairs out;
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    out.pairs.emplace_back(Vec2{rows[i].values[0], rows[i].values[1]},
                           Vec2{rows[i + 1].values[0], rows[i + 1].values[1]});
  }
  validate_pairs(out, plot);
  return out;
}

inline std::string format_level_curves(const LevelCurveSet& set) {
  std::string out;
  for (const Point3& p : set.points) {
    out += detail::fixed2(p.x) + ' ' + detail::fixed2(p.y) + ' ' + detail::fixed2(p.z) + '\n';
  }
  return out;
}

inline std::string format_points(std::span<const Vec2> points) {
  std::string out;
  for (const Vec2& p : points) out += detail::fixed2(p.x) + ' ' + detail::fixed2(p.y) + '\n';
  return out;
}

inline std::string format_plot(const PlotPolygon& plot) { return format_points(plot.vertices()); }

inline std::string format_eplot(const SubdivisionPairs& pairs) {
  std::vector<Vec2> rows;
  for (const auto& [a, b] : pairs.pairs) {
    rows.push_back(a);
    rows.push_back(b);
  }
  return format_points(rows);
}

}  // namespace agroline

#endif  // AGROLINE_INGEST_HPP
