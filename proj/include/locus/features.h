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

#ifndef LOCUS_FEATURES_H_
#define LOCUS_FEATURES_H_

#include <vector>

#include "locus/describe.h"
#include "locus/detect.h"
#include "locus/grid.h"
#include "locus/sdf.h"

namespace locus {

// Keypoints with their descriptors; entry i of both vectors belongs together.
struct SubmapFeatures {
  std::vector<Keypoint> keypoints;
  std::vector<Descriptor> descriptors;
};

// Detector parameters with border_margin resolved for the given grid and
// descriptor window.
DetectorParams ResolveDetectorParams(const DetectorParams& detector,
                                     const DescriptorParams& descriptor,
                                     double resolution);

// Detection and description on one SDF. Keypoints whose descriptor cannot be
// formed (zero gradient, window outside the defined region) are dropped.
SubmapFeatures ExtractFeatures(const SdfGrid& sdf, const DetectorParams& detector,
                               const DescriptorParams& descriptor);

// Describes externally supplied keypoints; failures are dropped, and
// kept_indices (if given) receives the surviving input indices.
SubmapFeatures DescribeKeypoints(const SdfGrid& sdf, std::vector<Keypoint> keypoints,
                                 const DetectorParams& detector,
                                 const DescriptorParams& descriptor,
                                 std::vector<int>* kept_indices = nullptr);

}  // namespace locus

#endif  // LOCUS_FEATURES_H_
