/*
 * Copyright 2026 The Locus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "locus/grid.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace locus {

double NormalizeAngle(double angle) {
  double a = std::fmod(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double Norm(Vec2 v) { return std::hypot(v.x, v.y); }

Pose2::Pose2(double x, double y, double theta)
    : x_(x), y_(y), theta_(NormalizeAngle(theta)) {}

Pose2 Pose2::inverse() const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return Pose2(-(c * x_ + s * y_), -(-s * x_ + c * y_), -theta_);
}

Pose2 operator*(const Pose2& a, const Pose2& b) {
  const Vec2 t = a * b.translation();
  return Pose2(t.x, t.y, a.theta_ + b.theta_);
}

Vec2 operator*(const Pose2& pose, Vec2 point) {
  const double c = std::cos(pose.theta_);
  const double s = std::sin(pose.theta_);
  return {c * point.x - s * point.y + pose.x_,
          s * point.x + c * point.y + pose.y_};
}

std::size_t GridGeometry::Index(int col, int row) const {
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
         static_cast<std::size_t>(col);
}

Vec2 GridGeometry::GridToMetric(Vec2 grid) const {
  return origin * Vec2{grid.x * resolution, grid.y * resolution};
}

Vec2 GridGeometry::MetricToGrid(Vec2 metric) const {
  const Vec2 local = origin.inverse() * metric;
  return {local.x / resolution, local.y / resolution};
}

std::optional<CellIndex> GridGeometry::NearestCell(Vec2 metric) const {
  const Vec2 g = MetricToGrid(metric);
  // Half-way points resolve toward the increasing index.
  const double c = std::floor(g.x + 0.5);
  const double r = std::floor(g.y + 0.5);
  if (c < 0.0 || r < 0.0 || c >= width || r >= height) return std::nullopt;
  return CellIndex{static_cast<int>(c), static_cast<int>(r)};
}

void GridGeometry::Validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
}

OccupancyGrid::OccupancyGrid(GridGeometry geometry, std::vector<float> cells)
    : geometry_(std::move(geometry)), cells_(std::move(cells)) {
  geometry_.Validate();
  if (cells_.size() != geometry_.size()) {
    throw std::invalid_argument("cell count does not match width*height");
  }
  for (const float p : cells_) {
    if (p != kUnknownProbability && !(p >= 0.0f && p <= 1.0f)) {
      throw std::invalid_argument("occupancy probability outside [0, 1]");
    }
  }
}

TernaryGrid::TernaryGrid(GridGeometry geometry, std::vector<CellState> cells)
    : geometry_(std::move(geometry)), cells_(std::move(cells)) {
  geometry_.Validate();
  if (cells_.size() != geometry_.size()) {
    throw std::invalid_argument("cell count does not match width*height");
  }
}

TernaryGrid Binarize(const OccupancyGrid& grid, double p_occ) {
  if (!(p_occ > 0.0 && p_occ < 1.0)) {
    throw std::invalid_argument("p_occ must lie in (0, 1)");
  }
  std::vector<CellState> cells;
  cells.reserve(grid.cells().size());
  for (const float p : grid.cells()) {
    if (p == kUnknownProbability) {
      cells.push_back(CellState::kUnknown);
    } else {
      cells.push_back(p >= p_occ ? CellState::kOccupied : CellState::kFree);
    }
  }
  return TernaryGrid(grid.geometry(), std::move(cells));
}

TernaryGrid RotateTernary(const TernaryGrid& grid, double angle) {
  const GridGeometry& src = grid.geometry();
  const Pose2 rotation(0.0, 0.0, angle);
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const int col : {0, src.width - 1}) {
    for (const int row : {0, src.height - 1}) {
      const Vec2 p = rotation * src.CellCenter(col, row);
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  GridGeometry dst;
  dst.resolution = src.resolution;
  dst.origin = Pose2(min_x, min_y, 0.0);
  dst.width = static_cast<int>(std::floor((max_x - min_x) / src.resolution + 1e-6)) + 1;
  dst.height = static_cast<int>(std::floor((max_y - min_y) / src.resolution + 1e-6)) + 1;

  const Pose2 inverse_rotation = rotation.inverse();
  std::vector<CellState> cells(dst.size(), CellState::kUnknown);
  for (int row = 0; row < dst.height; ++row) {
    for (int col = 0; col < dst.width; ++col) {
      const auto source = src.NearestCell(inverse_rotation * dst.CellCenter(col, row));
      if (source) cells[dst.Index(col, row)] = grid.at(source->col, source->row);
    }
  }
  return TernaryGrid(dst, std::move(cells));
}

}  // namespace locus
