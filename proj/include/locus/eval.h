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

#ifndef LOCUS_EVAL_H_
#define LOCUS_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locus/config.h"
#include "locus/grid.h"

namespace locus {

// Fraction of co-observed cells: observed cells of b whose center lands on an
// observed cell of a under T_ab, divided by the smaller observed count.
double OverlapRatio(const OccupancyGrid& a, const OccupancyGrid& b, const Pose2& t_ab);
double OverlapRatio(const Submap& a, const Submap& b);

struct LabeledPair {
  int index_a = 0;
  int index_b = 0;
  // b is rotated by this angle about its frame origin before matching.
  double rotation = 0.0;
  double overlap = 0.0;
  bool is_match = false;
  // Maps points of the rotated b into a.
  Pose2 ground_truth;
};

struct PairOptions {
  std::uint64_t seed = 0;
  bool rotate = true;
  double overlap_threshold = 0.3;
};

// Labels the given index pairs; rotations are drawn from the seed.
std::vector<LabeledPair> LabelPairs(std::span<const Submap> submaps,
                                    std::span<const std::pair<int, int>> pairs,
                                    const PairOptions& options);

// Draws count distinct unordered pairs (all of them if count exceeds the
// number available). Throws EmptyDatasetError for fewer than two submaps.
std::vector<std::pair<int, int>> SamplePairs(int n_submaps, int count, std::uint64_t seed);

struct PairOutcome {
  int n_inliers = 0;
  int n_correspondences = 0;
  Pose2 estimate;
  bool transform_ok = false;
  std::string error;  // non-empty if the pipeline failed on either submap
};

struct PrPoint {
  int min_inliers = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 1.0;
  double recall = 0.0;
};

struct PrCurve {
  std::vector<PrPoint> points;  // ascending min_inliers
};

struct Evaluation {
  std::vector<LabeledPair> pairs;
  std::vector<PairOutcome> outcomes;
  PrCurve curve;
  double mean_keypoints = 0.0;  // per submap view that was processed
};

// Runs the full pipeline on every pair. RANSAC of pair k is seeded from
// (match.rng_seed, k), so results do not depend on the job count.
Evaluation Evaluate(std::span<const Submap> submaps, std::span<const LabeledPair> pairs,
                    const Config& config, int jobs = 1);

// Sweeps min_inliers over the distinct positive inlier counts. A prediction
// is a true positive when the pair is a match and, unless decision_only,
// the estimate lies within the pose tolerances.
PrCurve BuildCurve(std::span<const LabeledPair> pairs, std::span<const PairOutcome> outcomes,
                   const EvalParams& params);

// Highest recall among points with precision >= target; 0 if none reaches it.
double RecallAtPrecision(const PrCurve& curve, double target);

struct AblationRun {
  double d_threshold = 0.0;
  Evaluation evaluation;
  double recall_at_p1 = 0.0;
};

// The unlimited baseline always runs first.
std::vector<AblationRun> AblateFreeSpace(std::span<const Submap> submaps,
                                         std::span<const LabeledPair> pairs,
                                         const Config& config,
                                         std::span<const double> d_thresholds, int jobs = 1);

struct GridSearchCell {
  std::vector<std::pair<std::string, std::string>> assignment;
  double recall_at_p1 = 0.0;
  double mean_keypoints = 0.0;
};

struct GridSearchResult {
  std::vector<GridSearchCell> cells;  // enumeration order
  std::size_t best = 0;
  Config best_config;
};

// Maximizes recall at precision 1; ties go to fewer keypoints, then to the
// earlier cell.
GridSearchResult GridSearch(std::span<const Submap> submaps, std::span<const LabeledPair> pairs,
                            const Config& base, const ParamGrid& grid, int jobs = 1);

}  // namespace locus

#endif  // LOCUS_EVAL_H_
