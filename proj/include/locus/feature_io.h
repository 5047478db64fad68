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

#ifndef LOCUS_FEATURE_IO_H_
#define LOCUS_FEATURE_IO_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locus/describe.h"
#include "locus/detect.h"
#include "locus/eval.h"
#include "locus/match.h"

namespace locus {

// x_m,y_m,class,response,sdf_value
std::string KeypointsToCsv(std::span<const Keypoint> keypoints);
// Grid coordinates are recovered through the geometry.
std::vector<Keypoint> ParseKeypointsCsv(std::string_view text, const GridGeometry& geometry);

// index,class,dominant_orientation,bin_0..bin_{n-1},distance_term. index is
// the keypoint index (indices[i] if given, else i).
std::string DescriptorsToCsv(std::span<const Descriptor> descriptors,
                             std::span<const int> indices = {});
std::vector<Descriptor> ParseDescriptorsCsv(std::string_view text);

// accepted,tx,ty,theta,n_inliers,n_correspondences
std::string MatchResultToCsv(const MatchResult& result);

// One row per inlier: keypoint indices, both positions in their own frames
// and b's position mapped into a.
std::string InliersToCsv(const MatchResult& result, std::span<const Keypoint> a,
                         std::span<const Keypoint> b);

// min_inliers,tp,fp,fn,precision,recall
std::string CurveToCsv(const PrCurve& curve);

std::string PairOutcomesToCsv(std::span<const Submap> submaps,
                              std::span<const LabeledPair> pairs,
                              std::span<const PairOutcome> outcomes);

}  // namespace locus

#endif  // LOCUS_FEATURE_IO_H_
