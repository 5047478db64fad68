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

#ifndef LOCUS_MATCH_H_
#define LOCUS_MATCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "locus/describe.h"
#include "locus/detect.h"
#include "locus/features.h"
#include "locus/grid.h"

namespace locus {

struct Correspondence {
  int index_a = 0;
  int index_b = 0;
  // nearest / second-nearest distance; for a lone same-class candidate,
  // nearest / singleton_cap.
  double ratio = 0.0;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

struct MatchParams {
  double max_ratio = 0.75;
  // Acceptance bound on the nearest distance when only one same-class
  // candidate exists and the ratio test is undefined.
  double singleton_cap = 0.25;
  bool mutual = false;
  double inlier_radius = 0.3;  // meters
  double ransac_confidence = 0.99;
  int ransac_max_iters = 1000;
  int min_inliers = 6;
  std::uint64_t rng_seed = 0;

  void Validate() const;
};

struct MatchResult {
  Pose2 transform;  // T_ab: maps points of submap b into submap a
  std::vector<Correspondence> inliers;
  int total_correspondences = 0;
  bool accepted = false;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Class-constrained nearest-neighbour lookup from a into b with the ratio
// test. Output ordered by index_a.
std::vector<Correspondence> MatchDescriptors(std::span<const Descriptor> a,
                                             std::span<const Descriptor> b,
                                             const MatchParams& params);

inline constexpr double kDegenerateSampleEpsilon = 1e-6;

// Rigid transform taking p1 -> q1 with p2 - p1 rotated onto q2 - q1.
// Throws DegenerateSampleError for coincident points.
Pose2 EstimateRigid2Pt(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

// Closed-form least-squares rigid transform taking from[i] onto to[i].
Pose2 FitRigid(std::span<const Vec2> from, std::span<const Vec2> to);

struct RansacResult {
  Pose2 transform;
  std::vector<Correspondence> inliers;
  int iterations = 0;
};

// Two-point hypothesize-and-verify on keypoint positions. Residual of a
// correspondence is |T * p_b - p_a|. Fewer than two correspondences return
// the identity with no inliers.
RansacResult RansacSe2(std::span<const Correspondence> correspondences,
                       std::span<const Keypoint> keypoints_a,
                       std::span<const Keypoint> keypoints_b,
                       const MatchParams& params);

MatchResult MatchSubmaps(const SubmapFeatures& a, const SubmapFeatures& b,
                         const MatchParams& params);

}  // namespace locus

#endif  // LOCUS_MATCH_H_
