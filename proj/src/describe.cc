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

#include "locus/describe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "locus/errors.h"

namespace locus {
namespace {

struct WindowSample {
  std::size_t index;
  double spatial_weight;
};

// Cells of the disc around the keypoint with their Gaussian window weights.
std::vector<WindowSample> Window(const GridGeometry& g,
                                 std::span<const std::uint8_t> valid,
                                 const Keypoint& keypoint,
                                 const DescriptorParams& params) {
  const double radius = params.radius / g.resolution;
  const double sigma = params.spatial_sigma * radius;
  const double cx = keypoint.grid.x;
  const double cy = keypoint.grid.y;
  std::vector<WindowSample> samples;
  for (int r = static_cast<int>(std::ceil(cy - radius));
       r <= static_cast<int>(std::floor(cy + radius)); ++r) {
    for (int c = static_cast<int>(std::ceil(cx - radius));
         c <= static_cast<int>(std::floor(cx + radius)); ++c) {
      const double dx = c - cx;
      const double dy = r - cy;
      const double d2 = dx * dx + dy * dy;
      if (d2 > radius * radius) continue;
      if (!g.Contains(c, r) || !valid[g.Index(c, r)]) {
        throw WindowOutsideSupportError("descriptor window leaves defined region");
      }
      samples.push_back({g.Index(c, r), std::exp(-0.5 * d2 / (sigma * sigma))});
    }
  }
  return samples;
}

// Relative tolerance under which histogram values count as equal.
constexpr double kTieTolerance = 1e-9;

// Interpolated angles of every orientation bin tied for the highest value, in
// increasing bin order.
std::vector<double> OrientationCandidates(const GradientField& gradients,
                                          const std::vector<WindowSample>& window,
                                          const DescriptorParams& params) {
  const int n = params.n_orient_bins;
  const double width = 2.0 * kPi / n;
  std::vector<double> histogram(n, 0.0);
  double total = 0.0;
  for (const WindowSample& s : window) {
    const double weight = gradients.magnitude[s.index] * s.spatial_weight;
    // Bin centers sit on multiples of the width; votes split linearly.
    const double position = gradients.orientation[s.index] / width;
    const double lower = std::floor(position);
    const double fraction = position - lower;
    const int bin = ((static_cast<int>(lower) % n) + n) % n;
    histogram[bin] += (1.0 - fraction) * weight;
    histogram[(bin + 1) % n] += fraction * weight;
    total += weight;
  }
  if (!(total > 0.0)) throw ZeroGradientError("descriptor window has zero gradient");

  constexpr double kSmoothing[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  std::vector<double> smoothed(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = -2; k <= 2; ++k) {
      smoothed[i] += kSmoothing[k + 2] * histogram[((i + k) % n + n) % n];
    }
  }

  const double highest = *std::max_element(smoothed.begin(), smoothed.end());
  std::vector<double> candidates;
  for (int peak = 0; peak < n; ++peak) {
    if (smoothed[peak] < highest * (1.0 - kTieTolerance)) continue;
    const double left = smoothed[(peak + n - 1) % n];
    const double center = smoothed[peak];
    const double right = smoothed[(peak + 1) % n];
    const double curvature = left - 2.0 * center + right;
    const double offset = curvature < 0.0 ? 0.5 * (left - right) / curvature : 0.0;
    candidates.push_back(NormalizeAngle((peak + offset) * width));
  }
  return candidates;
}

// L1-normalized histogram of orientations relative to `dominant`. Bin 0 is
// centered on the dominant orientation.
std::vector<double> RelativeHistogram(const GradientField& gradients,
                                      const std::vector<WindowSample>& window, double dominant,
                                      const DescriptorParams& params) {
  const int n = params.n_bins;
  const double width = 2.0 * kPi / n;
  std::vector<double> histogram(n, 0.0);
  double total = 0.0;
  for (const WindowSample& s : window) {
    double relative = std::fmod(gradients.orientation[s.index] - dominant, 2.0 * kPi);
    if (relative < 0.0) relative += 2.0 * kPi;
    if (relative >= 2.0 * kPi) relative -= 2.0 * kPi;
    const int bin = static_cast<int>(std::floor(relative / width + 0.5)) % n;
    const double weight = gradients.magnitude[s.index] * s.spatial_weight;
    histogram[bin] += weight;
    total += weight;
  }
  for (double& bin : histogram) bin /= total;
  return histogram;
}

// Lexicographic order that treats values within the tie tolerance as equal.
bool CanonicallyGreater(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kTieTolerance) return a[i] > b[i];
  }
  return false;
}

}  // namespace

void DescriptorParams::Validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (n_bins < 2) throw std::invalid_argument("n_bins must be >= 2");
  if (n_orient_bins < 2) throw std::invalid_argument("n_orient_bins must be >= 2");
  if (!(distance_weight >= 0.0)) {
    throw std::invalid_argument("distance_weight must be non-negative");
  }
  if (!(spatial_sigma > 0.0)) {
    throw std::invalid_argument("spatial_sigma must be positive");
  }
}

GradientField ComputeGradientField(const SdfGrid& smoothed) {
  const GridGeometry& g = smoothed.geometry;
  GradientField field{g, std::vector<double>(g.size(), 0.0),
                      std::vector<double>(g.size(), 0.0),
                      std::vector<std::uint8_t>(g.size(), 0)};
  for (int r = 1; r + 1 < g.height; ++r) {
    for (int c = 1; c + 1 < g.width; ++c) {
      if (!smoothed.is_valid(c - 1, r) || !smoothed.is_valid(c + 1, r) ||
          !smoothed.is_valid(c, r - 1) || !smoothed.is_valid(c, r + 1)) {
        continue;
      }
      const double gx = 0.5 * (smoothed.at(c + 1, r) - smoothed.at(c - 1, r));
      const double gy = 0.5 * (smoothed.at(c, r + 1) - smoothed.at(c, r - 1));
      const std::size_t i = g.Index(c, r);
      field.magnitude[i] = std::hypot(gx, gy);
      field.orientation[i] = std::atan2(gy, gx);
      field.valid[i] = 1;
    }
  }
  return field;
}

double DominantOrientation(const GradientField& gradients, const Keypoint& keypoint,
                           const DescriptorParams& params) {
  params.Validate();
  return OrientationCandidates(
             gradients, Window(gradients.geometry, gradients.valid, keypoint, params), params)
      .front();
}

Descriptor DescribeKeypoint(const SdfGrid& smoothed, const GradientField& gradients,
                            const Keypoint& keypoint, const DescriptorParams& params) {
  params.Validate();
  const std::vector<WindowSample> window =
      Window(gradients.geometry, gradients.valid, keypoint, params);
  Descriptor descriptor;
  descriptor.cls = keypoint.cls;
  for (const double candidate : OrientationCandidates(gradients, window, params)) {
    std::vector<double> histogram = RelativeHistogram(gradients, window, candidate, params);
    if (descriptor.histogram.empty() || CanonicallyGreater(histogram, descriptor.histogram)) {
      descriptor.histogram = std::move(histogram);
      descriptor.dominant_orientation = candidate;
    }
  }

  double mean_numerator = 0.0;
  double mean_denominator = 0.0;
  for (const WindowSample& s : window) {
    const double mean_weight = params.weighted_mean ? s.spatial_weight : 1.0;
    mean_numerator += mean_weight * smoothed.values[s.index];
    mean_denominator += mean_weight;
  }
  descriptor.distance_term =
      params.distance_weight * (mean_numerator / mean_denominator);
  return descriptor;
}

std::optional<double> DescriptorDistance(const Descriptor& a, const Descriptor& b) {
  if (a.cls != b.cls || a.histogram.size() != b.histogram.size()) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.histogram.size(); ++i) {
    const double d = a.histogram[i] - b.histogram[i];
    sum += d * d;
  }
  const double d = a.distance_term - b.distance_term;
  return std::sqrt(sum + d * d);
}

}  // namespace locus
