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

#include "locus/match.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "locus/errors.h"
#include "locus/random.h"

namespace locus {
namespace {

struct Neighbours {
  int best = -1;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  int candidates = 0;
};

Neighbours FindNeighbours(const Descriptor& query, std::span<const Descriptor> pool) {
  Neighbours n;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    const auto d = DescriptorDistance(query, pool[j]);
    if (!d) continue;
    ++n.candidates;
    if (*d < n.d1) {
      n.d2 = n.d1;
      n.d1 = *d;
      n.best = static_cast<int>(j);
    } else if (*d < n.d2) {
      n.d2 = *d;
    }
  }
  return n;
}

std::vector<Correspondence> CollectInliers(std::span<const Correspondence> correspondences,
                                           std::span<const Keypoint> a,
                                           std::span<const Keypoint> b,
                                           const Pose2& transform, double radius) {
  std::vector<Correspondence> inliers;
  for (const Correspondence& c : correspondences) {
    const Vec2 residual = transform * b[c.index_b].position - a[c.index_a].position;
    if (Norm(residual) <= radius) inliers.push_back(c);
  }
  return inliers;
}

Pose2 FitOnCorrespondences(std::span<const Correspondence> correspondences,
                           std::span<const Keypoint> a, std::span<const Keypoint> b) {
  std::vector<Vec2> from, to;
  from.reserve(correspondences.size());
  to.reserve(correspondences.size());
  for (const Correspondence& c : correspondences) {
    from.push_back(b[c.index_b].position);
    to.push_back(a[c.index_a].position);
  }
  return FitRigid(from, to);
}

int RequiredIterations(double inlier_fraction, double confidence, int cap) {
  if (inlier_fraction >= 1.0) return 1;
  const double all_inlier = inlier_fraction * inlier_fraction;
  if (all_inlier <= 0.0) return cap;
  const double n = std::log(1.0 - confidence) / std::log(1.0 - all_inlier);
  if (!std::isfinite(n) || n >= cap) return cap;
  return std::max(1, static_cast<int>(std::ceil(n)));
}

}  // namespace

void MatchParams::Validate() const {
  if (!(max_ratio > 0.0 && max_ratio < 1.0)) {
    throw std::invalid_argument("max_ratio must lie in (0, 1)");
  }
  if (!(inlier_radius > 0.0)) throw std::invalid_argument("inlier_radius must be positive");
  if (!(ransac_confidence > 0.0 && ransac_confidence < 1.0)) {
    throw std::invalid_argument("ransac_confidence must lie in (0, 1)");
  }
  if (ransac_max_iters < 1) throw std::invalid_argument("ransac_max_iters must be >= 1");
  if (!(singleton_cap >= 0.0)) throw std::invalid_argument("singleton_cap must be >= 0");
}

std::vector<Correspondence> MatchDescriptors(std::span<const Descriptor> a,
                                             std::span<const Descriptor> b,
                                             const MatchParams& params) {
  params.Validate();
  std::vector<Correspondence> matches;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Neighbours n = FindNeighbours(a[i], b);
    if (n.candidates == 0) continue;
    double ratio;
    if (n.candidates == 1) {
      if (!(n.d1 < params.singleton_cap)) continue;
      ratio = params.singleton_cap > 0.0 ? n.d1 / params.singleton_cap : 0.0;
    } else {
      ratio = n.d2 > 0.0 ? n.d1 / n.d2 : 1.0;
      if (!(ratio < params.max_ratio)) continue;
    }
    if (params.mutual) {
      const Neighbours back = FindNeighbours(b[n.best], a);
      if (back.best != static_cast<int>(i)) continue;
    }
    matches.push_back({static_cast<int>(i), n.best, ratio});
  }
  return matches;
}

Pose2 EstimateRigid2Pt(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const Vec2 dp = p2 - p1;
  const Vec2 dq = q2 - q1;
  if (Norm(dp) <= kDegenerateSampleEpsilon || Norm(dq) <= kDegenerateSampleEpsilon) {
    throw DegenerateSampleError("coincident sample points");
  }
  const double theta =
      std::atan2(dp.x * dq.y - dp.y * dq.x, dp.x * dq.x + dp.y * dq.y);
  const Pose2 rotation(0.0, 0.0, theta);
  const Vec2 t = q1 - rotation * p1;
  return Pose2(t.x, t.y, theta);
}

Pose2 FitRigid(std::span<const Vec2> from, std::span<const Vec2> to) {
  if (from.size() != to.size() || from.empty()) {
    throw std::invalid_argument("FitRigid needs equally sized, non-empty sets");
  }
  const double n = static_cast<double>(from.size());
  Vec2 cf, ct;
  for (std::size_t i = 0; i < from.size(); ++i) {
    cf = cf + from[i];
    ct = ct + to[i];
  }
  cf = (1.0 / n) * cf;
  ct = (1.0 / n) * ct;
  double dot = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Vec2 f = from[i] - cf;
    const Vec2 t = to[i] - ct;
    dot += f.x * t.x + f.y * t.y;
    cross += f.x * t.y - f.y * t.x;
  }
  const double theta = std::atan2(cross, dot);
  const Vec2 t = ct - Pose2(0.0, 0.0, theta) * cf;
  return Pose2(t.x, t.y, theta);
}

RansacResult RansacSe2(std::span<const Correspondence> correspondences,
                       std::span<const Keypoint> keypoints_a,
                       std::span<const Keypoint> keypoints_b,
                       const MatchParams& params) {
  params.Validate();
  RansacResult result;
  const std::size_t n = correspondences.size();
  if (n < 2) return result;

  Rng rng(params.rng_seed);
  std::vector<Correspondence> best;
  Pose2 best_transform;
  int required = params.ransac_max_iters;
  int iteration = 0;
  while (iteration < required) {
    ++iteration;
    const std::size_t i = rng.Index(n);
    std::size_t j = rng.Index(n - 1);
    if (j >= i) ++j;
    const Correspondence& ci = correspondences[i];
    const Correspondence& cj = correspondences[j];
    Pose2 hypothesis;
    try {
      hypothesis = EstimateRigid2Pt(
          keypoints_b[ci.index_b].position, keypoints_b[cj.index_b].position,
          keypoints_a[ci.index_a].position, keypoints_a[cj.index_a].position);
    } catch (const DegenerateSampleError&) {
      continue;
    }
    auto inliers = CollectInliers(correspondences, keypoints_a, keypoints_b,
                                  hypothesis, params.inlier_radius);
    if (inliers.size() > best.size()) {
      best = std::move(inliers);
      best_transform = hypothesis;
      required = RequiredIterations(static_cast<double>(best.size()) / n,
                                    params.ransac_confidence, params.ransac_max_iters);
    }
  }
  result.iterations = iteration;
  if (best.size() < 2) {
    result.transform = best_transform;
    result.inliers = std::move(best);
    return result;
  }

  // Refit until the consensus set stops changing.
  Pose2 transform = FitOnCorrespondences(best, keypoints_a, keypoints_b);
  for (int round = 0; round < 10; ++round) {
    auto updated = CollectInliers(correspondences, keypoints_a, keypoints_b, transform,
                                  params.inlier_radius);
    if (updated == best || updated.size() < 2) break;
    best = std::move(updated);
    transform = FitOnCorrespondences(best, keypoints_a, keypoints_b);
  }
  result.transform = transform;
  result.inliers = CollectInliers(correspondences, keypoints_a, keypoints_b, transform,
                                  params.inlier_radius);
  return result;
}

MatchResult MatchSubmaps(const SubmapFeatures& a, const SubmapFeatures& b,
                         const MatchParams& params) {
  const std::vector<Correspondence> correspondences =
      MatchDescriptors(a.descriptors, b.descriptors, params);
  RansacResult ransac = RansacSe2(correspondences, a.keypoints, b.keypoints, params);
  MatchResult result;
  result.transform = ransac.transform;
  result.inliers = std::move(ransac.inliers);
  result.total_correspondences = static_cast<int>(correspondences.size());
  result.accepted = static_cast<int>(result.inliers.size()) >= params.min_inliers;
  return result;
}

}  // namespace locus
