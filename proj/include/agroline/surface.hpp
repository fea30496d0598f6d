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

#ifndef AGROLINE_SURFACE_HPP
#define AGROLINE_SURFACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "agroline/error.hpp"
#include "agroline/ingest.hpp"
#include "agroline/vec2.hpp"

namespace agroline {

/// N x M subgrid of terrain samples. Row i has constant y, column j constant x.
struct SampleGrid {
  static constexpr std::size_t kMaxSize = 5;

  std::size_t rows = 0;  // N
  std::size_t cols = 0;  // M
  std::vector<double> x, y, z;
  /// Distance from each node to the terrain point that supplied its height.
  std::vector<double> node_distance;

  std::size_t at(std::size_t i, std::size_t j) const { return i * cols + j; }
};

/// z(x,y) = sum q(i,j) u^(M-1-j) v^(N-1-i), with u = (x - cx)/sx and
/// v = (y - cy)/sy. Indices are zero-based; the shift keeps UTM-sized
/// coordinates well conditioned.
class PolynomialSurface {
 public:
  struct Frame {
    double cx = 0.0, sx = 1.0, cy = 0.0, sy = 1.0;
  };

  PolynomialSurface(std::size_t rows, std::size_t cols, std::vector<double> q, Frame frame)
      : rows_(rows), cols_(cols), q_(std::move(q)), frame_(frame) {}
  PolynomialSurface(std::size_t rows, std::size_t cols, std::vector<double> q)
      : PolynomialSurface(rows, cols, std::move(q), Frame{0.0, 1.0, 0.0, 1.0}) {}

  static PolynomialSurface constant(double value) { return {1, 1, {value}}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double coefficient(std::size_t i, std::size_t j) const { return q_[i * cols_ + j]; }
  const Frame& frame() const { return frame_; }

  double operator()(double x, double y) const {
    const double u = (x - frame_.cx) / frame_.sx;
    const double v = (y - frame_.cy) / frame_.sy;
    double z = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) z = z * v + row_value(i, u);
    return z;
  }
  double operator()(Vec2 p) const { return (*this)(p.x, p.y); }

  /// Exact partial derivatives (dz/dx, dz/dy) in metres per metre.
  Vec2 gradient(double x, double y) const {
    const double u = (x - frame_.cx) / frame_.sx;
    const double v = (y - frame_.cy) / frame_.sy;
    double dz_du = 0.0, dz_dv = 0.0, z = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double r = row_value(i, u);
      dz_dv = dz_dv * v + z;
      z = z * v + r;
      dz_du = dz_du * v + row_derivative(i, u);
    }
    return {dz_du / frame_.sx, dz_dv / frame_.sy};
  }
  Vec2 gradient(Vec2 p) const { return gradient(p.x, p.y); }

 private:
  double row_value(std::size_t i, double u) const {
    double r = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) r = r * u + q_[i * cols_ + j];
    return r;
  }
  double row_derivative(std::size_t i, double u) const {
    double r = 0.0, d = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      d = d * u + r;
      r = r * u + q_[i * cols_ + j];
    }
    return d;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> q_;
  Frame frame_;
};

/// Equally spaced N x M nodes over the terrain bounds, each taking the height
/// of its nearest terrain point (earliest file index on ties). Sizes are
/// clamped to 5.
inline SampleGrid build_sample_grid(const LevelCurveSet& terrain, std::size_t rows = 5,
                                    std::size_t cols = 5) {
  if (rows < 2 || cols < 2) {
    throw Error(ErrorKind::Validation, "sample grid needs at least 2 rows and 2 columns");
  }
  if (terrain.points.empty()) throw Error(ErrorKind::EmptyInput, "terrain has no points");
  const Bounds& b = terrain.bounds;
  if (!(b.width() > 0.0) || !(b.height() > 0.0)) {
    throw Error(ErrorKind::DegenerateExtent, "terrain bounds have zero width or height");
  }
  SampleGrid g;
  g.rows = std::min(rows, SampleGrid::kMaxSize);
  g.cols = std::min(cols, SampleGrid::kMaxSize);
  const std::size_t count = g.rows * g.cols;
  g.x.resize(count);
  g.y.resize(count);
  g.z.resize(count);
  g.node_distance.resize(count);
  for (std::size_t i = 0; i < g.rows; ++i) {
    const double ny = b.ymin + b.height() * static_cast<double>(i) / static_cast<double>(g.rows - 1);
    for (std::size_t j = 0; j < g.cols; ++j) {
      const double nx = b.xmin + b.width() * static_cast<double>(j) / static_cast<double>(g.cols - 1);
      double best = INFINITY;
      double best_z = 0.0;
      for (const Point3& p : terrain.points) {
        const double d2 = (p.x - nx) * (p.x - nx) + (p.y - ny) * (p.y - ny);
        if (d2 < best) {
          best = d2;
          best_z = p.z;
        }
      }
      const std::size_t k = g.at(i, j);
      g.x[k] = nx;
      g.y[k] = ny;
      g.z[k] = best_z;
      g.node_distance[k] = std::sqrt(best);
    }
  }
  return g;
}

namespace detail {

// Least-squares polynomial of the given degree, coefficients in descending
// powers (polyfit order).
inline std::vector<double> polyfit(const std::vector<double>& t, const std::vector<double>& values,
                                   std::size_t degree) {
  const auto n = static_cast<Eigen::Index>(t.size());
  const auto terms = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd vander(n, terms);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double power = 1.0;
    for (Eigen::Index c = terms - 1; c >= 0; --c) {
      vander(r, c) = power;
      power *= t[static_cast<std::size_t>(r)];
    }
    rhs(r) = values[static_cast<std::size_t>(r)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  qr.setThreshold(1e-12);
  if (qr.rank() < terms) {
    throw Error(ErrorKind::SingularFit, "repeated abscissae in a " + std::to_string(degree) +
                                            "-degree fit");
  }
  const Eigen::VectorXd sol = qr.solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

}  // namespace detail

/// Row-wise fit in x, then column-wise fit of those coefficients in y.
inline PolynomialSurface fit_surface(const SampleGrid& grid) {
  const std::size_t n = grid.rows;
  const std::size_t m = grid.cols;
  const auto [xmin, xmax] = std::minmax_element(grid.x.begin(), grid.x.end());
  const auto [ymin, ymax] = std::minmax_element(grid.y.begin(), grid.y.end());
  PolynomialSurface::Frame frame{0.5 * (*xmin + *xmax), 0.5 * (*xmax - *xmin),
                                 0.5 * (*ymin + *ymax), 0.5 * (*ymax - *ymin)};
  if (!(frame.sx > 0.0) || !(frame.sy > 0.0)) {
    throw Error(ErrorKind::SingularFit, "grid abscissae do not span an interval");
  }

  std::vector<double> p(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> u(m), zr(m);
    for (std::size_t j = 0; j < m; ++j) {
      u[j] = (grid.x[grid.at(i, j)] - frame.cx) / frame.sx;
      zr[j] = grid.z[grid.at(i, j)];
    }
    const auto row = detail::polyfit(u, zr, m - 1);
    std::copy(row.begin(), row.end(), p.begin() + static_cast<std::ptrdiff_t>(i * m));
  }

  std::vector<double> q(n * m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> v(n), pc(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = (grid.y[grid.at(i, j)] - frame.cy) / frame.sy;
      pc[i] = p[i * m + j];
    }
    const auto col = detail::polyfit(v, pc, n - 1);
    for (std::size_t i = 0; i < n; ++i) q[i * m + j] = col[i];
  }
  return {n, m, std::move(q), frame};
}

inline double eval_surface(const PolynomialSurface& s, double x, double y) { return s(x, y); }

inline Vec2 surface_gradient(const PolynomialSurface& s, double x, double y) {
  return s.gradient(x, y);
}

/// Coefficient matrix as text, one row per line, scientific notation. The
/// normalizing frame is written first as a comment line.
inline std::string format_coefficients(const PolynomialSurface& s) {
  char buf[64];
  std::string out;
  const auto& f = s.frame();
  std::snprintf(buf, sizeof buf, "# frame %.17g", f.cx);
  out += buf;
  for (double v : {f.sx, f.cy, f.sy}) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out += buf;
  }
  out += '\n';
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.10e", j ? " " : "", s.coefficient(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace agroline

#endif  // AGROLINE_SURFACE_HPP
