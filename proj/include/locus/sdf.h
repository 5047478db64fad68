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

#ifndef LOCUS_SDF_H_
#define LOCUS_SDF_H_

#include <cstdint>
#include <span>
#include <vector>

#include "locus/grid.h"

namespace locus {

// Signed distance samples in meters. Free cells hold +distance to the nearest
// occupied cell, occupied cells hold -distance to the nearest free cell, both
// measured between cell centers over observed cells only. valid marks
// observed cells; unknown cells hold -distance to the nearest free cell,
// which downstream code may use as obstacle-interior fill.
struct SdfGrid {
  GridGeometry geometry;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  double at(int col, int row) const { return values[geometry.Index(col, row)]; }
  bool is_valid(int col, int row) const {
    return valid[geometry.Index(col, row)] != 0;
  }

  friend bool operator==(const SdfGrid&, const SdfGrid&) = default;
};

// Exact squared Euclidean distance (in cells^2) from every cell to the nearest
// feature cell; +infinity everywhere if there are no features. Separable
// lower-envelope transform, linear in the number of cells.
std::vector<double> SquaredDistanceTransform(int width, int height,
                                             std::span<const std::uint8_t> is_feature);

// Throws EmptyFieldError if nothing is observed and DegenerateFieldError if the
// observed space holds a single occupancy class.
SdfGrid ComputeSdf(const TernaryGrid& grid);

// Exhaustive O(N^2) reference for ComputeSdf with identical conventions.
SdfGrid BruteForceSdf(const TernaryGrid& grid);

}  // namespace locus

#endif  // LOCUS_SDF_H_
