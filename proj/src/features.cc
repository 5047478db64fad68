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

#include "locus/features.h"

#include "locus/errors.h"

namespace locus {

DetectorParams ResolveDetectorParams(const DetectorParams& detector,
                                     const DescriptorParams& descriptor,
                                     double resolution) {
  DetectorParams resolved = detector;
  if (resolved.border_margin < 0) {
    resolved.border_margin =
        DefaultBorderMargin(detector.sigma, descriptor.radius / resolution);
  }
  return resolved;
}

namespace {

SubmapFeatures DescribeWithFields(const DetectionFields& fields,
                                  std::vector<Keypoint> keypoints,
                                  const DescriptorParams& descriptor,
                                  std::vector<int>* kept_indices) {
  const GradientField gradients = ComputeGradientField(fields.smoothed);
  SubmapFeatures features;
  features.keypoints.reserve(keypoints.size());
  features.descriptors.reserve(keypoints.size());
  if (kept_indices) kept_indices->clear();
  for (std::size_t i = 0; i < keypoints.size(); ++i) {
    try {
      features.descriptors.push_back(
          DescribeKeypoint(fields.smoothed, gradients, keypoints[i], descriptor));
      features.keypoints.push_back(keypoints[i]);
      if (kept_indices) kept_indices->push_back(static_cast<int>(i));
    } catch (const ZeroGradientError&) {
    } catch (const WindowOutsideSupportError&) {
    }
  }
  return features;
}

}  // namespace

SubmapFeatures ExtractFeatures(const SdfGrid& sdf, const DetectorParams& detector,
                               const DescriptorParams& descriptor) {
  descriptor.Validate();
  const DetectorParams resolved =
      ResolveDetectorParams(detector, descriptor, sdf.geometry.resolution);
  const DetectionFields fields = ComputeDetectionFields(sdf, resolved);
  return DescribeWithFields(fields, DetectKeypoints(sdf, fields, resolved),
                            descriptor, nullptr);
}

SubmapFeatures DescribeKeypoints(const SdfGrid& sdf, std::vector<Keypoint> keypoints,
                                 const DetectorParams& detector,
                                 const DescriptorParams& descriptor,
                                 std::vector<int>* kept_indices) {
  descriptor.Validate();
  const DetectorParams resolved =
      ResolveDetectorParams(detector, descriptor, sdf.geometry.resolution);
  const DetectionFields fields = ComputeDetectionFields(sdf, resolved);
  return DescribeWithFields(fields, std::move(keypoints), descriptor, kept_indices);
}

}  // namespace locus
