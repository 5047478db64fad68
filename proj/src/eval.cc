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

#include "locus/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "locus/errors.h"
#include "locus/features.h"
#include "locus/match.h"
#include "locus/random.h"
#include "locus/sdf.h"

namespace locus {
namespace {

// Runs fn(i) for i in [0, n) on up to jobs threads. The first exception is
// rethrown after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Features {
  SubmapFeatures features;
  std::string error;
};

Features Extract(const TernaryGrid& grid, const Config& config) {
  try {
    return {ExtractFeatures(ComputeSdf(grid), config.detector, config.descriptor), {}};
  } catch (const Error& e) {
    return {{}, e.what()};
  }
}

bool WithinTolerance(const Pose2& estimate, const Pose2& truth, const EvalParams& params) {
  const double dt = Norm(estimate.translation() - truth.translation());
  const double dtheta = std::abs(NormalizeAngle(estimate.theta() - truth.theta()));
  return dt <= params.pose_tolerance_m && dtheta <= params.pose_tolerance_deg * kPi / 180.0;
}

}  // namespace

double OverlapRatio(const OccupancyGrid& a, const OccupancyGrid& b, const Pose2& t_ab) {
  std::size_t observed_a = 0;
  for (float p : a.cells()) observed_a += p != kUnknownProbability;
  std::size_t observed_b = 0;
  std::size_t shared = 0;
  for (int row = 0; row < b.height(); ++row) {
    for (int col = 0; col < b.width(); ++col) {
      if (b.IsUnknown(col, row)) continue;
      ++observed_b;
      const auto cell = a.geometry().NearestCell(t_ab * b.geometry().CellCenter(col, row));
      if (cell && !a.IsUnknown(cell->col, cell->row)) ++shared;
    }
  }
  const std::size_t denominator = std::min(observed_a, observed_b);
  if (denominator == 0) return 0.0;
  return std::min(1.0, static_cast<double>(shared) / static_cast<double>(denominator));
}

double OverlapRatio(const Submap& a, const Submap& b) {
  return OverlapRatio(a.grid, b.grid, a.pose.inverse() * b.pose);
}

std::vector<LabeledPair> LabelPairs(std::span<const Submap> submaps,
                                    std::span<const std::pair<int, int>> pairs,
                                    const PairOptions& options) {
  std::vector<LabeledPair> labeled;
  labeled.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    if (i < 0 || j < 0 || i >= static_cast<int>(submaps.size()) ||
        j >= static_cast<int>(submaps.size())) {
      throw std::out_of_range("pair index out of range");
    }
    LabeledPair pair;
    pair.index_a = i;
    pair.index_b = j;
    if (options.rotate) {
      Rng rng(DeriveSeed(options.seed, k));
      pair.rotation = rng.Uniform(-kPi, kPi);
    }
    pair.overlap = OverlapRatio(submaps[i], submaps[j]);
    pair.is_match = pair.overlap >= options.overlap_threshold;
    pair.ground_truth =
        submaps[i].pose.inverse() * submaps[j].pose * Pose2(0.0, 0.0, pair.rotation).inverse();
    labeled.push_back(pair);
  }
  return labeled;
}

std::vector<std::pair<int, int>> SamplePairs(int n_submaps, int count, std::uint64_t seed) {
  if (n_submaps < 2) throw EmptyDatasetError("pair sampling needs at least two submaps");
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n_submaps; ++i) {
    for (int j = i + 1; j < n_submaps; ++j) all.emplace_back(i, j);
  }
  if (count < 0 || static_cast<std::size_t>(count) >= all.size()) return all;
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    const std::size_t pick = k + rng.Index(all.size() - k);
    std::swap(all[k], all[pick]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

Evaluation Evaluate(std::span<const Submap> submaps, std::span<const LabeledPair> pairs,
                    const Config& config, int jobs) {
  config.Validate();
  Evaluation evaluation;
  evaluation.pairs.assign(pairs.begin(), pairs.end());
  evaluation.outcomes.resize(pairs.size());

  std::vector<int> anchors;
  for (const LabeledPair& pair : pairs) anchors.push_back(pair.index_a);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  std::vector<Features> anchor_features(anchors.size());
  ParallelFor(anchors.size(), jobs, [&](std::size_t k) {
    anchor_features[k] = Extract(Binarize(submaps[anchors[k]].grid, config.p_occ), config);
  });

  std::vector<std::size_t> query_keypoints(pairs.size(), 0);
  ParallelFor(pairs.size(), jobs, [&](std::size_t k) {
    const LabeledPair& pair = pairs[k];
    const auto it = std::lower_bound(anchors.begin(), anchors.end(), pair.index_a);
    const Features& a = anchor_features[it - anchors.begin()];
    TernaryGrid grid_b = Binarize(submaps[pair.index_b].grid, config.p_occ);
    if (pair.rotation != 0.0) grid_b = RotateTernary(grid_b, pair.rotation);
    const Features b = Extract(grid_b, config);
    query_keypoints[k] = b.features.keypoints.size();
    PairOutcome& outcome = evaluation.outcomes[k];
    if (!a.error.empty() || !b.error.empty()) {
      outcome.error = !a.error.empty() ? a.error : b.error;
      return;
    }
    MatchParams params = config.match;
    params.rng_seed = DeriveSeed(config.match.rng_seed, k);
    const MatchResult result = MatchSubmaps(a.features, b.features, params);
    outcome.n_inliers = static_cast<int>(result.inliers.size());
    outcome.n_correspondences = result.total_correspondences;
    outcome.estimate = result.transform;
    outcome.transform_ok = WithinTolerance(result.transform, pair.ground_truth, config.eval);
  });

  std::size_t views = anchors.size() + pairs.size();
  double total = 0.0;
  for (const Features& f : anchor_features) total += f.features.keypoints.size();
  for (std::size_t n : query_keypoints) total += n;
  evaluation.mean_keypoints = views == 0 ? 0.0 : total / static_cast<double>(views);
  evaluation.curve = BuildCurve(evaluation.pairs, evaluation.outcomes, config.eval);
  return evaluation;
}

PrCurve BuildCurve(std::span<const LabeledPair> pairs, std::span<const PairOutcome> outcomes,
                   const EvalParams& params) {
  if (pairs.size() != outcomes.size()) {
    throw std::invalid_argument("pairs and outcomes differ in length");
  }
  std::set<int> thresholds;
  for (const PairOutcome& o : outcomes) {
    if (o.n_inliers > 0) thresholds.insert(o.n_inliers);
  }
  if (thresholds.empty()) thresholds.insert(1);
  int positives = 0;
  for (const LabeledPair& p : pairs) positives += p.is_match;

  PrCurve curve;
  for (int threshold : thresholds) {
    PrPoint point;
    point.min_inliers = threshold;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (outcomes[k].n_inliers < threshold) continue;
      const bool correct =
          pairs[k].is_match && (params.decision_only || outcomes[k].transform_ok);
      ++(correct ? point.tp : point.fp);
    }
    point.fn = positives - point.tp;
    point.precision = point.tp + point.fp == 0
                          ? 1.0
                          : static_cast<double>(point.tp) / (point.tp + point.fp);
    point.recall = positives == 0 ? 0.0 : static_cast<double>(point.tp) / positives;
    curve.points.push_back(point);
  }
  return curve;
}

double RecallAtPrecision(const PrCurve& curve, double target) {
  if (curve.points.empty()) throw EmptyDatasetError("empty precision-recall curve");
  double best = 0.0;
  for (const PrPoint& p : curve.points) {
    if (p.precision >= target - 1e-12) best = std::max(best, p.recall);
  }
  return best;
}

std::vector<AblationRun> AblateFreeSpace(std::span<const Submap> submaps,
                                         std::span<const LabeledPair> pairs,
                                         const Config& config,
                                         std::span<const double> d_thresholds, int jobs) {
  std::vector<double> values = {std::numeric_limits<double>::infinity()};
  for (double d : d_thresholds) {
    if (!std::isinf(d)) values.push_back(d);
  }
  std::vector<AblationRun> runs;
  for (double d : values) {
    Config c = config;
    c.detector.d_threshold = d;
    AblationRun run;
    run.d_threshold = d;
    run.evaluation = Evaluate(submaps, pairs, c, jobs);
    run.recall_at_p1 = RecallAtPrecision(run.evaluation.curve, 1.0);
    runs.push_back(std::move(run));
  }
  return runs;
}

GridSearchResult GridSearch(std::span<const Submap> submaps, std::span<const LabeledPair> pairs,
                            const Config& base, const ParamGrid& grid, int jobs) {
  if (grid.size() == 0) throw ConfigError("parameter grid is empty");
  GridSearchResult result;
  for (std::size_t index = 0; index < grid.size(); ++index) {
    GridSearchCell cell;
    cell.assignment = grid.Cell(index);
    Config c = base;
    for (const auto& [key, value] : cell.assignment) c.Set(key, value);
    c.Validate();
    const Evaluation evaluation = Evaluate(submaps, pairs, c, jobs);
    cell.recall_at_p1 = RecallAtPrecision(evaluation.curve, 1.0);
    cell.mean_keypoints = evaluation.mean_keypoints;
    const bool better =
        result.cells.empty() ||
        cell.recall_at_p1 > result.cells[result.best].recall_at_p1 ||
        (cell.recall_at_p1 == result.cells[result.best].recall_at_p1 &&
         cell.mean_keypoints < result.cells[result.best].mean_keypoints);
    if (better) {
      result.best = index;
      result.best_config = c;
    }
    result.cells.push_back(std::move(cell));
  }
  return result;
}

}  // namespace locus
