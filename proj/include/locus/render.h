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

#ifndef LOCUS_RENDER_H_
#define LOCUS_RENDER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "locus/detect.h"
#include "locus/match.h"
#include "locus/sdf.h"

namespace locus {

// 8-bit raster, row-major with the top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  void Set(int x, int y, std::uint8_t value);
  void Save(const std::string& path) const;
};

// SDF in gray with keypoint markers: maxima as plus signs, minima as
// crosses, saddles as hollow squares.
Image RenderKeypoints(const SdfGrid& sdf, std::span<const Keypoint> keypoints);

// Both submaps side by side with a line per inlier correspondence.
Image RenderMatch(const SdfGrid& sdf_a, std::span<const Keypoint> keypoints_a,
                  const SdfGrid& sdf_b, std::span<const Keypoint> keypoints_b,
                  const MatchResult& result);

}  // namespace locus

#endif  // LOCUS_RENDER_H_
