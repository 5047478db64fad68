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

#include "locus/detect.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace locus {
namespace {

// Counts of blocked cells over axis-aligned boxes in O(1).
class BoxCounter {
 public:
  BoxCounter(int width, int height, std::span<const std::uint8_t> allowed)
      : width_(width), height_(height),
        sums_(static_cast<std::size_t>(width + 1) * (height + 1), 0) {
    for (int r = 0; r < height; ++r) {
      int row_sum = 0;
      for (int c = 0; c < width; ++c) {
        row_sum += allowed[static_cast<std::size_t>(r) * width + c] ? 0 : 1;
        at(c + 1, r + 1) = at(c + 1, r) + row_sum;
      }
    }
  }

  // True iff the box of the given half-extent around (col, row) lies inside
  // the grid and contains no blocked cell.
  bool Clear(int col, int row, int radius) const {
    const int c0 = col - radius, c1 = col + radius;
    const int r0 = row - radius, r1 = row + radius;
    if (c0 < 0 || r0 < 0 || c1 >= width_ || r1 >= height_) return false;
    return at(c1 + 1, r1 + 1) - at(c0, r1 + 1) - at(c1 + 1, r0) + at(c0, r0) == 0;
  }

 private:
  int& at(int c, int r) { return sums_[static_cast<std::size_t>(r) * (width_ + 1) + c]; }
  int at(int c, int r) const {
    return sums_[static_cast<std::size_t>(r) * (width_ + 1) + c];
  }

  int width_;
  int height_;
  std::vector<int> sums_;
};

struct Field {
  std::vector<double> values;
  std::vector<std::uint8_t> defined;
};

enum class Axis { kX, kY };

// 3x3 Sobel derivative along axis, normalized so a unit ramp yields 1.
Field Sobel(const GridGeometry& g, const Field& in, Axis axis) {
  Field out{std::vector<double>(g.size(), 0.0), std::vector<std::uint8_t>(g.size(), 0)};
  const BoxCounter box(g.width, g.height, in.defined);
  constexpr double kSmooth[3] = {0.25, 0.5, 0.25};
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (!box.Clear(c, r, 1)) continue;
      double sum = 0.0;
      for (int k = -1; k <= 1; ++k) {
        if (axis == Axis::kX) {
          sum += kSmooth[k + 1] *
                 (in.values[g.Index(c + 1, r + k)] - in.values[g.Index(c - 1, r + k)]);
        } else {
          sum += kSmooth[k + 1] *
                 (in.values[g.Index(c + k, r + 1)] - in.values[g.Index(c + k, r - 1)]);
        }
      }
      const std::size_t i = g.Index(c, r);
      out.values[i] = 0.5 * sum;
      out.defined[i] = 1;
    }
  }
  return out;
}

double Bilinear(const SdfGrid& sdf, Vec2 p) {
  const GridGeometry& g = sdf.geometry;
  const int c0 = std::clamp(static_cast<int>(std::floor(p.x)), 0, std::max(0, g.width - 2));
  const int r0 = std::clamp(static_cast<int>(std::floor(p.y)), 0, std::max(0, g.height - 2));
  const int c1 = std::min(c0 + 1, g.width - 1);
  const int r1 = std::min(r0 + 1, g.height - 1);
  const double tx = std::clamp(p.x - c0, 0.0, 1.0);
  const double ty = std::clamp(p.y - r0, 0.0, 1.0);
  const double bottom = (1 - tx) * sdf.at(c0, r0) + tx * sdf.at(c1, r0);
  const double top = (1 - tx) * sdf.at(c0, r1) + tx * sdf.at(c1, r1);
  return (1 - ty) * bottom + ty * top;
}

// Offset of the quadratic peak fitted to a 3x3 patch, clamped to half a cell.
Vec2 RefinePeak(const double patch[3][3]) {
  const double f0 = patch[1][1];
  const double dx = 0.5 * (patch[1][2] - patch[1][0]);
  const double dy = 0.5 * (patch[2][1] - patch[0][1]);
  const double dxx = patch[1][2] - 2.0 * f0 + patch[1][0];
  const double dyy = patch[2][1] - 2.0 * f0 + patch[0][1];
  const double dxy = 0.25 * (patch[2][2] - patch[0][2] - patch[2][0] + patch[0][0]);
  Vec2 offset;
  const double det = dxx * dyy - dxy * dxy;
  if (det > 0.0 && dxx < 0.0) {
    offset.x = -(dyy * dx - dxy * dy) / det;
    offset.y = -(dxx * dy - dxy * dx) / det;
  } else {
    offset.x = dxx < 0.0 ? -dx / dxx : 0.0;
    offset.y = dyy < 0.0 ? -dy / dyy : 0.0;
  }
  offset.x = std::clamp(offset.x, -0.5, 0.5);
  offset.y = std::clamp(offset.y, -0.5, 0.5);
  return offset;
}

}  // namespace

std::string_view ToString(KeypointClass cls) {
  switch (cls) {
    case KeypointClass::kMaximum: return "maximum";
    case KeypointClass::kMinimum: return "minimum";
    case KeypointClass::kSaddle: return "saddle";
  }
  return "unknown";
}

std::optional<KeypointClass> ParseKeypointClass(std::string_view text) {
  if (text == "maximum") return KeypointClass::kMaximum;
  if (text == "minimum") return KeypointClass::kMinimum;
  if (text == "saddle") return KeypointClass::kSaddle;
  return std::nullopt;
}

void DetectorParams::Validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(detection_threshold > 0.0)) {
    throw std::invalid_argument("detection_threshold must be positive");
  }
  if (nms_radius < 1) throw std::invalid_argument("nms_radius must be >= 1");
  if (!(d_threshold > 0.0)) {
    throw std::invalid_argument("d_threshold must be positive or infinite");
  }
}

int DefaultBorderMargin(double sigma, double descriptor_radius_cells) {
  return static_cast<int>(std::ceil(3.0 * sigma)) +
         static_cast<int>(std::ceil(descriptor_radius_cells)) + 3;
}

std::vector<std::uint8_t> SupportMask(const SdfGrid& sdf, Barrier barrier) {
  if (barrier == Barrier::kUnknown) return sdf.valid;
  const GridGeometry& g = sdf.geometry;
  std::vector<std::uint8_t> support(g.size(), 1);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (sdf.is_valid(c, r)) continue;
      bool frontier = false;
      for (int dr = -1; dr <= 1 && !frontier; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nc = c + dc, nr = r + dr;
          if (g.Contains(nc, nr) && sdf.is_valid(nc, nr) && sdf.at(nc, nr) > 0.0) {
            frontier = true;
            break;
          }
        }
      }
      if (frontier) support[g.Index(c, r)] = 0;
    }
  }
  return support;
}

std::vector<double> GaussianKernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  }
  const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
  for (double& t : taps) t /= total;
  return taps;
}

SdfGrid Smooth(const SdfGrid& sdf, double sigma) {
  return Smooth(sdf, sigma, sdf.valid);
}

SdfGrid Smooth(const SdfGrid& sdf, double sigma,
               std::span<const std::uint8_t> support) {
  const std::vector<double> taps = GaussianKernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const GridGeometry& g = sdf.geometry;
  std::vector<double> horizontal(g.size(), 0.0);
  for (int r = 0; r < g.height; ++r) {
    for (int c = radius; c < g.width - radius; ++c) {
      double sum = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        sum += taps[k + radius] * sdf.values[g.Index(c + k, r)];
      }
      horizontal[g.Index(c, r)] = sum;
    }
  }
  SdfGrid out{g, std::vector<double>(g.size(), 0.0),
              std::vector<std::uint8_t>(g.size(), 0)};
  const BoxCounter box(g.width, g.height, support);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (!box.Clear(c, r, radius)) continue;
      double sum = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        sum += taps[k + radius] * horizontal[g.Index(c, r + k)];
      }
      out.values[g.Index(c, r)] = sum;
      out.valid[g.Index(c, r)] = 1;
    }
  }
  return out;
}

HessianField ComputeHessian(const SdfGrid& smoothed) {
  const GridGeometry& g = smoothed.geometry;
  Field f{std::vector<double>(g.size()), smoothed.valid};
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.values[i] = smoothed.values[i] / g.resolution;
  }
  const Field fx = Sobel(g, f, Axis::kX);
  const Field fy = Sobel(g, f, Axis::kY);
  const Field fxx = Sobel(g, fx, Axis::kX);
  const Field fyy = Sobel(g, fy, Axis::kY);
  const Field fxy = Sobel(g, fy, Axis::kX);
  HessianField h{g, fxx.values, fxy.values, fyy.values,
                 std::vector<std::uint8_t>(g.size(), 0)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    h.valid[i] = fxx.defined[i] && fyy.defined[i] && fxy.defined[i];
  }
  return h;
}

double Determinant(const HessianEntries& h) { return h.xx * h.yy - h.xy * h.xy; }

std::vector<double> DeterminantOfHessian(const HessianField& hessian) {
  std::vector<double> doh(hessian.xx.size(), 0.0);
  for (std::size_t i = 0; i < doh.size(); ++i) {
    if (hessian.valid[i]) {
      doh[i] = hessian.xx[i] * hessian.yy[i] - hessian.xy[i] * hessian.xy[i];
    }
  }
  return doh;
}

KeypointClass Classify(const HessianEntries& h) {
  const double mean = 0.5 * (h.xx + h.yy);
  const double radius = std::hypot(0.5 * (h.xx - h.yy), h.xy);
  const double lambda1 = mean + radius;
  const double lambda2 = mean - radius;
  if (lambda1 < 0.0 && lambda2 < 0.0) return KeypointClass::kMaximum;
  if (lambda1 > 0.0 && lambda2 > 0.0) return KeypointClass::kMinimum;
  return KeypointClass::kSaddle;
}

DetectionFields ComputeDetectionFields(const SdfGrid& sdf,
                                       const DetectorParams& params) {
  params.Validate();
  DetectionFields fields;
  fields.support = SupportMask(sdf, params.barrier);
  fields.smoothed = Smooth(sdf, params.sigma, fields.support);
  fields.hessian = ComputeHessian(fields.smoothed);
  fields.doh = DeterminantOfHessian(fields.hessian);
  return fields;
}

std::vector<Keypoint> DetectKeypoints(const SdfGrid& sdf,
                                      const DetectorParams& params) {
  return DetectKeypoints(sdf, ComputeDetectionFields(sdf, params), params);
}

std::vector<Keypoint> DetectKeypoints(const SdfGrid& sdf,
                                      const DetectionFields& fields,
                                      const DetectorParams& params) {
  params.Validate();
  const GridGeometry& g = sdf.geometry;
  const int margin = params.border_margin >= 0
                         ? params.border_margin
                         : static_cast<int>(std::ceil(3.0 * params.sigma)) + 3;
  const BoxCounter border(g.width, g.height, fields.support);
  const std::vector<std::uint8_t>& hvalid = fields.hessian.valid;
  const std::vector<double>& doh = fields.doh;
  const int nms = params.nms_radius;

  struct Candidate {
    Keypoint keypoint;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const std::size_t i = g.Index(c, r);
      if (!hvalid[i] || !sdf.valid[i]) continue;
      const double magnitude = std::abs(doh[i]);
      if (!(magnitude > params.detection_threshold)) continue;
      if (margin > 0 && !border.Clear(c, r, margin - 1)) continue;

      bool is_peak = true;
      for (int dr = -nms; dr <= nms && is_peak; ++dr) {
        for (int dc = -nms; dc <= nms; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int nc = c + dc, nr = r + dr;
          if (!g.Contains(nc, nr)) continue;
          const std::size_t j = g.Index(nc, nr);
          if (!hvalid[j]) continue;
          const double other = std::abs(doh[j]);
          // Plateaus keep only their first cell in raster order.
          if (other > magnitude || (other == magnitude && j < i)) {
            is_peak = false;
            break;
          }
        }
      }
      if (!is_peak) continue;

      double patch[3][3];
      bool patch_ok = true;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nc = c + dc, nr = r + dr;
          if (!g.Contains(nc, nr) || !hvalid[g.Index(nc, nr)]) {
            patch_ok = false;
            continue;
          }
          patch[dr + 1][dc + 1] = std::abs(doh[g.Index(nc, nr)]);
        }
      }
      const Vec2 offset = patch_ok ? RefinePeak(patch) : Vec2{};

      Keypoint kp;
      kp.grid = {c + offset.x, r + offset.y};
      kp.position = g.GridToMetric(kp.grid);
      kp.response = doh[i];
      kp.cls = Classify(fields.hessian.at(c, r));
      kp.sdf_value = Bilinear(sdf, kp.grid);
      if (!(kp.sdf_value > 0.0)) continue;
      if (!(kp.sdf_value <= params.d_threshold)) continue;
      candidates.push_back({kp, i});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return std::abs(a.keypoint.response) > std::abs(b.keypoint.response);
                   });
  std::vector<Keypoint> keypoints;
  keypoints.reserve(candidates.size());
  for (const Candidate& cand : candidates) keypoints.push_back(cand.keypoint);
  return keypoints;
}

}  // namespace locus
