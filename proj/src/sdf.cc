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

#include "locus/sdf.h"

#include <cmath>
#include <limits>

#include "locus/errors.h"

namespace locus {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// One-dimensional squared distance transform of a sampled function. Entries
// equal to +infinity take no part in the lower envelope.
void Transform1D(std::span<const double> f, std::span<double> out,
                 std::vector<int>& vertices, std::vector<double>& boundaries) {
  const int n = static_cast<int>(f.size());
  vertices.clear();
  boundaries.clear();
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInfinity) continue;
    const double fq = f[q] + static_cast<double>(q) * q;
    while (!vertices.empty()) {
      const int v = vertices.back();
      const double s =
          (fq - (f[v] + static_cast<double>(v) * v)) / (2.0 * (q - v));
      if (s > boundaries.back()) {
        boundaries.push_back(s);
        break;
      }
      vertices.pop_back();
      boundaries.pop_back();
    }
    if (vertices.empty()) boundaries.push_back(-kInfinity);
    vertices.push_back(q);
  }
  if (vertices.empty()) {
    std::fill(out.begin(), out.end(), kInfinity);
    return;
  }
  std::size_t k = 0;
  for (int q = 0; q < n; ++q) {
    while (k + 1 < vertices.size() && boundaries[k + 1] < q) ++k;
    const double d = static_cast<double>(q - vertices[k]);
    out[q] = d * d + f[vertices[k]];
  }
}

struct ClassMasks {
  std::vector<std::uint8_t> occupied;
  std::vector<std::uint8_t> free;
  std::vector<std::uint8_t> observed;
};

ClassMasks SplitClasses(const TernaryGrid& grid) {
  ClassMasks masks;
  const std::size_t n = grid.geometry().size();
  masks.occupied.assign(n, 0);
  masks.free.assign(n, 0);
  masks.observed.assign(n, 0);
  std::size_t n_occupied = 0;
  std::size_t n_free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    switch (grid.cells()[i]) {
      case CellState::kOccupied:
        masks.occupied[i] = masks.observed[i] = 1;
        ++n_occupied;
        break;
      case CellState::kFree:
        masks.free[i] = masks.observed[i] = 1;
        ++n_free;
        break;
      case CellState::kUnknown:
        break;
    }
  }
  if (n_occupied + n_free == 0) {
    throw EmptyFieldError("grid has no observed cells");
  }
  if (n_occupied == 0 || n_free == 0) {
    throw DegenerateFieldError(
        "observed space holds a single occupancy class; no surface exists");
  }
  return masks;
}

}  // namespace

std::vector<double> SquaredDistanceTransform(int width, int height,
                                             std::span<const std::uint8_t> is_feature) {
  const std::size_t w = static_cast<std::size_t>(width);
  const std::size_t h = static_cast<std::size_t>(height);
  std::vector<double> grid(w * h);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = is_feature[i] ? 0.0 : kInfinity;
  }
  std::vector<int> vertices;
  std::vector<double> boundaries;
  std::vector<double> column(h), column_out(h);
  for (std::size_t c = 0; c < w; ++c) {
    for (std::size_t r = 0; r < h; ++r) column[r] = grid[r * w + c];
    Transform1D(column, column_out, vertices, boundaries);
    for (std::size_t r = 0; r < h; ++r) grid[r * w + c] = column_out[r];
  }
  std::vector<double> row_out(w);
  for (std::size_t r = 0; r < h; ++r) {
    std::span<double> row(grid.data() + r * w, w);
    Transform1D(row, row_out, vertices, boundaries);
    std::copy(row_out.begin(), row_out.end(), row.begin());
  }
  return grid;
}

SdfGrid ComputeSdf(const TernaryGrid& grid) {
  const ClassMasks masks = SplitClasses(grid);
  const GridGeometry& geometry = grid.geometry();
  const std::vector<double> to_occupied =
      SquaredDistanceTransform(geometry.width, geometry.height, masks.occupied);
  const std::vector<double> to_free =
      SquaredDistanceTransform(geometry.width, geometry.height, masks.free);

  SdfGrid sdf{geometry, std::vector<double>(geometry.size()), masks.observed};
  for (std::size_t i = 0; i < sdf.values.size(); ++i) {
    sdf.values[i] = masks.free[i]
                        ? std::sqrt(to_occupied[i]) * geometry.resolution
                        : -std::sqrt(to_free[i]) * geometry.resolution;
  }
  return sdf;
}

SdfGrid BruteForceSdf(const TernaryGrid& grid) {
  const ClassMasks masks = SplitClasses(grid);
  const GridGeometry& geometry = grid.geometry();
  std::vector<CellIndex> occupied, free;
  for (int row = 0; row < geometry.height; ++row) {
    for (int col = 0; col < geometry.width; ++col) {
      const std::size_t i = geometry.Index(col, row);
      if (masks.occupied[i]) occupied.push_back({col, row});
      if (masks.free[i]) free.push_back({col, row});
    }
  }
  SdfGrid sdf{geometry, std::vector<double>(geometry.size()), masks.observed};
  for (int row = 0; row < geometry.height; ++row) {
    for (int col = 0; col < geometry.width; ++col) {
      const std::size_t i = geometry.Index(col, row);
      const bool is_free = masks.free[i] != 0;
      const std::vector<CellIndex>& targets = is_free ? occupied : free;
      double best = kInfinity;
      for (const CellIndex& t : targets) {
        const double dc = t.col - col;
        const double dr = t.row - row;
        best = std::min(best, dc * dc + dr * dr);
      }
      const double distance = std::sqrt(best) * geometry.resolution;
      sdf.values[i] = is_free ? distance : -distance;
    }
  }
  return sdf;
}

}  // namespace locus
