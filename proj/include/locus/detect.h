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

#ifndef LOCUS_DETECT_H_
#define LOCUS_DETECT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "locus/grid.h"
#include "locus/sdf.h"

namespace locus {

enum class KeypointClass : std::uint8_t { kMaximum = 0, kMinimum = 1, kSaddle = 2 };

std::string_view ToString(KeypointClass cls);
std::optional<KeypointClass> ParseKeypointClass(std::string_view text);

// Which unobserved cells act as a barrier for convolution support and for the
// border margin. kFrontier only treats unknown cells touching observed free
// space as barrier; unknown cells shadowed behind surfaces carry the SDF's
// obstacle-interior fill. kUnknown treats every unknown cell as barrier.
enum class Barrier : std::uint8_t { kFrontier = 0, kUnknown = 1 };

struct DetectorParams {
  double sigma = 2.0;  // cells
  // Applied to |det H| with distances measured in cells, which makes the
  // response dimensionless: at 5 cm pitch 0.0025 corresponds to a
  // principal-curvature product of about 1 m^-2.
  double detection_threshold = 0.0025;
  int nms_radius = 2;
  // Cells; negative selects ceil(3 sigma) + 3 (the Hessian support). The
  // pipeline resolves it against the descriptor radius, see
  // DefaultBorderMargin.
  int border_margin = -1;
  double d_threshold = std::numeric_limits<double>::infinity();  // meters
  Barrier barrier = Barrier::kFrontier;

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;
};

// Smallest margin keeping a descriptor disc of the given radius on smoothed
// cells with defined values.
int DefaultBorderMargin(double sigma, double descriptor_radius_cells);

struct HessianEntries {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

// Second derivatives of the smoothed field with distance expressed in cells.
struct HessianField {
  GridGeometry geometry;
  std::vector<double> xx;
  std::vector<double> xy;
  std::vector<double> yy;
  std::vector<std::uint8_t> valid;

  HessianEntries at(int col, int row) const {
    const std::size_t i = geometry.Index(col, row);
    return {xx[i], xy[i], yy[i]};
  }
};

struct Keypoint {
  Vec2 position;  // meters, submap frame
  Vec2 grid;      // fractional cell coordinates
  KeypointClass cls = KeypointClass::kMaximum;
  double response = 0.0;   // signed det H at the detection cell
  double sdf_value = 0.0;  // meters, raw SDF at position
};

// Cells whose SDF value may feed a convolution.
std::vector<std::uint8_t> SupportMask(const SdfGrid& sdf, Barrier barrier);

// Normalized Gaussian taps over [-ceil(3 sigma), ceil(3 sigma)].
std::vector<double> GaussianKernel(double sigma);

// Separable Gaussian smoothing. A cell of the result is valid iff its whole
// kernel footprint lies on supported cells; the single-argument form uses the
// SDF's validity mask as support.
SdfGrid Smooth(const SdfGrid& sdf, double sigma);
SdfGrid Smooth(const SdfGrid& sdf, double sigma,
               std::span<const std::uint8_t> support);

// Sobel derivatives applied twice per axis (xx, yy) or once per axis (xy).
HessianField ComputeHessian(const SdfGrid& smoothed);

double Determinant(const HessianEntries& h);
std::vector<double> DeterminantOfHessian(const HessianField& hessian);

// Sign pattern of the closed-form eigenvalues: both negative is a maximum,
// both positive a minimum, anything else a saddle.
KeypointClass Classify(const HessianEntries& h);

struct DetectionFields {
  std::vector<std::uint8_t> support;
  SdfGrid smoothed;
  HessianField hessian;
  std::vector<double> doh;
};

DetectionFields ComputeDetectionFields(const SdfGrid& sdf,
                                       const DetectorParams& params);

std::vector<Keypoint> DetectKeypoints(const SdfGrid& sdf,
                                      const DetectorParams& params);
std::vector<Keypoint> DetectKeypoints(const SdfGrid& sdf,
                                      const DetectionFields& fields,
                                      const DetectorParams& params);

}  // namespace locus

#endif  // LOCUS_DETECT_H_
