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

#include "locus/render.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "locus/grid_io.h"

namespace locus {
namespace {

constexpr int kGap = 8;
constexpr int kMarkerSize = 3;

struct Pixel {
  int x;
  int y;
};

Pixel ToPixel(const GridGeometry& g, const Keypoint& k, int x_offset) {
  return {x_offset + static_cast<int>(std::lround(k.grid.x)),
          g.height - 1 - static_cast<int>(std::lround(k.grid.y))};
}

void Blit(Image& image, const SdfGrid& sdf, int x_offset) {
  const std::vector<std::uint8_t> pixels = SdfToPixels(sdf);
  for (int y = 0; y < sdf.geometry.height; ++y) {
    for (int x = 0; x < sdf.geometry.width; ++x) {
      image.Set(x_offset + x, y, pixels[static_cast<std::size_t>(y) * sdf.geometry.width + x]);
    }
  }
}

void DrawMarker(Image& image, Pixel p, KeypointClass cls) {
  for (int d = -kMarkerSize; d <= kMarkerSize; ++d) {
    switch (cls) {
      case KeypointClass::kMaximum:
        image.Set(p.x + d, p.y, 255);
        image.Set(p.x, p.y + d, 255);
        break;
      case KeypointClass::kMinimum:
        image.Set(p.x + d, p.y + d, 0);
        image.Set(p.x + d, p.y - d, 0);
        break;
      case KeypointClass::kSaddle:
        image.Set(p.x + d, p.y - kMarkerSize, 255);
        image.Set(p.x + d, p.y + kMarkerSize, 255);
        image.Set(p.x - kMarkerSize, p.y + d, 255);
        image.Set(p.x + kMarkerSize, p.y + d, 255);
        break;
    }
  }
}

// Bresenham.
void DrawLine(Image& image, Pixel a, Pixel b, std::uint8_t value) {
  const int dx = std::abs(b.x - a.x), sx = a.x < b.x ? 1 : -1;
  const int dy = -std::abs(b.y - a.y), sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  while (true) {
    image.Set(a.x, a.y, value);
    if (a.x == b.x && a.y == b.y) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      a.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      a.y += sy;
    }
  }
}

}  // namespace

void Image::Set(int x, int y, std::uint8_t value) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  pixels[static_cast<std::size_t>(y) * width + x] = value;
}

void Image::Save(const std::string& path) const { WritePgm(path, width, height, pixels); }

Image RenderKeypoints(const SdfGrid& sdf, std::span<const Keypoint> keypoints) {
  Image image{sdf.geometry.width, sdf.geometry.height,
              std::vector<std::uint8_t>(sdf.geometry.size(), 128)};
  Blit(image, sdf, 0);
  for (const Keypoint& k : keypoints) DrawMarker(image, ToPixel(sdf.geometry, k, 0), k.cls);
  return image;
}

Image RenderMatch(const SdfGrid& sdf_a, std::span<const Keypoint> keypoints_a,
                  const SdfGrid& sdf_b, std::span<const Keypoint> keypoints_b,
                  const MatchResult& result) {
  const int offset_b = sdf_a.geometry.width + kGap;
  Image image;
  image.width = offset_b + sdf_b.geometry.width;
  image.height = std::max(sdf_a.geometry.height, sdf_b.geometry.height);
  image.pixels.assign(static_cast<std::size_t>(image.width) * image.height, 0);
  Blit(image, sdf_a, 0);
  Blit(image, sdf_b, offset_b);
  for (const Keypoint& k : keypoints_a) DrawMarker(image, ToPixel(sdf_a.geometry, k, 0), k.cls);
  for (const Keypoint& k : keypoints_b) {
    DrawMarker(image, ToPixel(sdf_b.geometry, k, offset_b), k.cls);
  }
  for (const Correspondence& c : result.inliers) {
    DrawLine(image, ToPixel(sdf_a.geometry, keypoints_a[c.index_a], 0),
             ToPixel(sdf_b.geometry, keypoints_b[c.index_b], offset_b), 255);
  }
  return image;
}

}  // namespace locus
