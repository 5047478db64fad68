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

#ifndef LOCUS_DESCRIBE_H_
#define LOCUS_DESCRIBE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "locus/detect.h"
#include "locus/sdf.h"

namespace locus {

struct DescriptorParams {
  double radius = 0.8;  // meters
  int n_bins = 17;
  int n_orient_bins = 36;
  double distance_weight = 0.002;
  double spatial_sigma = 0.5;  // fraction of radius
  // false selects the unweighted window mean for the distance term.
  bool weighted_mean = true;

  void Validate() const;
};

struct Descriptor {
  std::vector<double> histogram;  // L1-normalized
  double distance_term = 0.0;
  KeypointClass cls = KeypointClass::kMaximum;
  double dominant_orientation = 0.0;  // diagnostics only
};

// Central-difference gradient in meters per cell.
struct GradientField {
  GridGeometry geometry;
  std::vector<double> magnitude;
  std::vector<double> orientation;  // atan2(g_y, g_x)
  std::vector<std::uint8_t> valid;
};

GradientField ComputeGradientField(const SdfGrid& smoothed);

// Each vote splits linearly between the two nearest bin centers, which sit on
// multiples of the bin width. The histogram is smoothed with a five-tap
// binomial kernel before the peak is interpolated by a parabola. Returns the
// lowest-bin peak when several tie. Throws ZeroGradientError
// for a window without gradient energy and WindowOutsideSupportError when the
// disc leaves the defined region.
double DominantOrientation(const GradientField& gradients, const Keypoint& keypoint,
                           const DescriptorParams& params);

// When several orientation peaks tie, keeps the one whose relative histogram
// is lexicographically largest, so the choice does not depend on the frame.
Descriptor DescribeKeypoint(const SdfGrid& smoothed, const GradientField& gradients,
                            const Keypoint& keypoint, const DescriptorParams& params);

// Euclidean distance over (histogram, distance_term); nullopt when the classes
// differ.
std::optional<double> DescriptorDistance(const Descriptor& a, const Descriptor& b);

}  // namespace locus

#endif  // LOCUS_DESCRIBE_H_
