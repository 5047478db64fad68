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

#ifndef LOCUS_GRID_H_
#define LOCUS_GRID_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace locus {

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double angle);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

double Norm(Vec2 v);

// Rigid transform in SE(2). theta is kept in (-pi, pi].
class Pose2 {
 public:
  Pose2() = default;
  Pose2(double x, double y, double theta);

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Vec2 translation() const { return {x_, y_}; }

  Pose2 inverse() const;
  friend Pose2 operator*(const Pose2& a, const Pose2& b);
  friend Vec2 operator*(const Pose2& pose, Vec2 point);
  friend bool operator==(const Pose2& a, const Pose2& b) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

struct CellIndex {
  int col = 0;
  int row = 0;
  friend bool operator==(CellIndex a, CellIndex b) = default;
};

// Placement of a row-major raster in a submap frame. origin is the pose of the
// center of cell (0, 0); col runs along the origin's x axis, row along y.
struct GridGeometry {
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  Pose2 origin;

  std::size_t size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t Index(int col, int row) const;
  bool Contains(int col, int row) const {
    return col >= 0 && row >= 0 && col < width && row < height;
  }
  // Metric position of a (possibly fractional) grid coordinate.
  Vec2 GridToMetric(Vec2 grid) const;
  Vec2 CellCenter(int col, int row) const {
    return GridToMetric({static_cast<double>(col), static_cast<double>(row)});
  }
  Vec2 MetricToGrid(Vec2 metric) const;
  // Cell whose center is nearest to the point, if inside the grid.
  std::optional<CellIndex> NearestCell(Vec2 metric) const;

  // Throws std::invalid_argument if dimensions or resolution are invalid.
  void Validate() const;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

inline constexpr float kUnknownProbability = -1.0f;

// Occupancy probabilities in [0, 1]; unobserved cells store
// kUnknownProbability.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  // Throws std::invalid_argument on a size mismatch or out-of-range cell.
  OccupancyGrid(GridGeometry geometry, std::vector<float> cells);

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  double resolution() const { return geometry_.resolution; }
  std::span<const float> cells() const { return cells_; }

  float at(int col, int row) const { return cells_[geometry_.Index(col, row)]; }
  bool IsUnknown(int col, int row) const {
    return at(col, row) == kUnknownProbability;
  }

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  GridGeometry geometry_;
  std::vector<float> cells_;
};

enum class CellState : std::uint8_t { kFree = 0, kOccupied = 1, kUnknown = 2 };

class TernaryGrid {
 public:
  TernaryGrid() = default;
  TernaryGrid(GridGeometry geometry, std::vector<CellState> cells);

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }
  std::span<const CellState> cells() const { return cells_; }
  CellState at(int col, int row) const {
    return cells_[geometry_.Index(col, row)];
  }

  friend bool operator==(const TernaryGrid&, const TernaryGrid&) = default;

 private:
  GridGeometry geometry_;
  std::vector<CellState> cells_;
};

struct Submap {
  std::string id;
  Pose2 pose;  // submap frame in the global frame
  OccupancyGrid grid;

  friend bool operator==(const Submap&, const Submap&) = default;
};

inline constexpr double kDefaultOccupiedThreshold = 0.5;

// Cells with probability >= p_occ become occupied. p_occ must lie in (0, 1).
TernaryGrid Binarize(const OccupancyGrid& grid,
                     double p_occ = kDefaultOccupiedThreshold);

// Rotates grid content by angle about the submap frame origin using
// nearest-neighbour resampling. The result is axis aligned (origin theta 0)
// and sized to the rotated footprint; cells with no source are unknown. A
// point p of the input frame appears at Rot(angle) * p in the output frame.
// Multiples of pi/2 reproduce an exact cell permutation.
TernaryGrid RotateTernary(const TernaryGrid& grid, double angle);

}  // namespace locus

#endif  // LOCUS_GRID_H_
