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

#include <cmath>
#include <functional>
#include <numeric>

#include "gtest/gtest.h"
#include "locus/features.h"
#include "locus/sdf.h"
#include "test_util.h"

namespace locus {
namespace {

SdfGrid FieldFromFunction(int width, int height, double resolution,
                          const std::function<double(double, double)>& f) {
  SdfGrid sdf;
  sdf.geometry = testing::Geometry(width, height, resolution);
  sdf.values.resize(sdf.geometry.size());
  sdf.valid.assign(sdf.geometry.size(), 1);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) sdf.values[sdf.geometry.Index(c, r)] = f(c, r);
  }
  return sdf;
}

TernaryGrid Pad(const TernaryGrid& grid, int pad, CellState fill) {
  const GridGeometry& g = grid.geometry();
  const GridGeometry out_g =
      testing::Geometry(g.width + 2 * pad, g.height + 2 * pad, g.resolution);
  std::vector<CellState> cells(out_g.size(), fill);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) cells[out_g.Index(c + pad, r + pad)] = grid.at(c, r);
  }
  return TernaryGrid(out_g, std::move(cells));
}

// Quarter turn counter-clockwise on cell indices: (c, r) -> (H - 1 - r, c).
TernaryGrid QuarterTurn(const TernaryGrid& grid) {
  const GridGeometry& g = grid.geometry();
  const GridGeometry out_g = testing::Geometry(g.height, g.width, g.resolution);
  std::vector<CellState> cells(out_g.size());
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) cells[out_g.Index(g.height - 1 - r, c)] = grid.at(c, r);
  }
  return TernaryGrid(out_g, std::move(cells));
}

TernaryGrid BenchmarkGrid(int index) {
  const Submap& s = testing::SmallBenchmark().dataset.submaps.at(index);
  const TernaryGrid t = Binarize(s.grid);
  return TernaryGrid(testing::Geometry(t.width(), t.height(), t.geometry().resolution),
                     std::vector<CellState>(t.cells().begin(), t.cells().end()));
}

DetectorParams BenchmarkParams(double resolution) {
  return ResolveDetectorParams(DetectorParams(), DescriptorParams(), resolution);
}

TEST(DetectTest, KernelIsNormalizedAndSymmetric) {
  for (double sigma : {0.5, 1.0, 2.0, 3.3}) {
    const std::vector<double> k = GaussianKernel(sigma);
    EXPECT_EQ(k.size(), 2 * static_cast<std::size_t>(std::ceil(3 * sigma)) + 1);
    EXPECT_NEAR(std::accumulate(k.begin(), k.end(), 0.0), 1.0, 1e-15);
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(k[i], k[k.size() - 1 - i]);
  }
  EXPECT_THROW(GaussianKernel(0.0), std::invalid_argument);
}

TEST(DetectTest, SmoothingPreservesConstants) {
  const SdfGrid sdf = FieldFromFunction(30, 25, 0.05, [](double, double) { return 0.7; });
  const SdfGrid out = Smooth(sdf, 2.0);
  int valid = 0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (!out.valid[i]) continue;
    ++valid;
    EXPECT_NEAR(out.values[i], 0.7, 1e-12);
  }
  EXPECT_EQ(valid, (30 - 12) * (25 - 12));
}

TEST(DetectTest, SmoothingImpulse) {
  const SdfGrid sdf =
      FieldFromFunction(21, 21, 1.0, [](double c, double r) { return c == 10 && r == 10; });
  const SdfGrid out = Smooth(sdf, 1.0);
  const std::vector<double> k = GaussianKernel(1.0);
  EXPECT_NEAR(out.at(10, 10), k[3] * k[3], 1e-15);
}

TEST(DetectTest, SmoothingPreservesRamps) {
  const SdfGrid sdf =
      FieldFromFunction(40, 30, 0.05, [](double c, double r) { return 0.3 * c - 0.1 * r; });
  const SdfGrid out = Smooth(sdf, 2.0);
  for (int r = 0; r < 30; ++r) {
    for (int c = 0; c < 40; ++c) {
      if (out.is_valid(c, r)) EXPECT_NEAR(out.at(c, r), 0.3 * c - 0.1 * r, 1e-9);
    }
  }
}

TEST(DetectTest, SmoothingHonoursSupport) {
  SdfGrid sdf = FieldFromFunction(30, 30, 1.0, [](double, double) { return 1.0; });
  sdf.valid[sdf.geometry.Index(15, 15)] = 0;
  const SdfGrid out = Smooth(sdf, 1.0);
  EXPECT_FALSE(out.is_valid(15, 15));
  EXPECT_FALSE(out.is_valid(18, 12));
  EXPECT_TRUE(out.is_valid(19, 15));
}

TEST(DetectTest, HessianOfQuadratics) {
  const auto check = [](const std::function<double(double, double)>& f, double xx,
                        double yy) {
    const HessianField h = ComputeHessian(Smooth(FieldFromFunction(40, 40, 1.0, f), 2.0));
    int checked = 0;
    for (int r = 0; r < 40; ++r) {
      for (int c = 0; c < 40; ++c) {
        if (!h.valid[h.geometry.Index(c, r)]) continue;
        const HessianEntries e = h.at(c, r);
        EXPECT_NEAR(e.xx, xx, 0.05);
        EXPECT_NEAR(e.yy, yy, 0.05);
        EXPECT_NEAR(e.xy, 0.0, 0.05);
        ++checked;
      }
    }
    EXPECT_GT(checked, 100);
  };
  check([](double x, double y) { return 0.5 * (x * x + y * y); }, 1.0, 1.0);
  check([](double x, double y) { return 0.5 * (x * x - y * y); }, 1.0, -1.0);
}

TEST(DetectTest, HessianOfLinearFieldVanishes) {
  const HessianField h = ComputeHessian(
      FieldFromFunction(20, 20, 0.05, [](double c, double r) { return 0.05 * (2 * c + r); }));
  int checked = 0;
  for (std::size_t i = 0; i < h.xx.size(); ++i) {
    if (!h.valid[i]) continue;
    ++checked;
    EXPECT_NEAR(h.xx[i], 0.0, 1e-9);
    EXPECT_NEAR(h.xy[i], 0.0, 1e-9);
    EXPECT_NEAR(h.yy[i], 0.0, 1e-9);
  }
  EXPECT_EQ(checked, 16 * 16);
}

TEST(DetectTest, HessianIsDimensionless) {
  // The same cell-unit field at two pitches gives the same Hessian.
  const auto f = [](double c, double r) { return 0.5 * c * c + 0.25 * c * r; };
  const HessianField a = ComputeHessian(FieldFromFunction(12, 12, 1.0, f));
  const auto g = [](double c, double r) { return 0.05 * (0.5 * c * c + 0.25 * c * r); };
  const HessianField b = ComputeHessian(FieldFromFunction(12, 12, 0.05, g));
  EXPECT_NEAR(a.at(6, 6).xx, 1.0, 1e-9);
  EXPECT_NEAR(a.at(6, 6).xy, 0.25, 1e-9);
  EXPECT_NEAR(b.at(6, 6).xx, a.at(6, 6).xx, 1e-9);
  EXPECT_NEAR(b.at(6, 6).xy, a.at(6, 6).xy, 1e-9);
}

TEST(DetectTest, DeterminantExamples) {
  EXPECT_EQ(Determinant({1, 0, 1}), 1.0);
  EXPECT_EQ(Determinant({1, 0, -1}), -1.0);
  EXPECT_EQ(Determinant({2, 1, 1}), 1.0);
}

TEST(DetectTest, ClassifyExamples) {
  EXPECT_EQ(Classify({-1, 0, -1}), KeypointClass::kMaximum);
  EXPECT_EQ(Classify({1, 0, 1}), KeypointClass::kMinimum);
  EXPECT_EQ(Classify({1, 0, -1}), KeypointClass::kSaddle);
  EXPECT_EQ(Classify({2, 1, 1}), KeypointClass::kMinimum);
  EXPECT_EQ(Classify({1, 2, 1}), KeypointClass::kSaddle);
  EXPECT_EQ(Classify({-3, 1, -1}), KeypointClass::kMaximum);
}

TEST(DetectTest, ClassStringsRoundTrip) {
  for (KeypointClass cls :
       {KeypointClass::kMaximum, KeypointClass::kMinimum, KeypointClass::kSaddle}) {
    EXPECT_EQ(ParseKeypointClass(ToString(cls)), cls);
  }
  EXPECT_FALSE(ParseKeypointClass("ridge").has_value());
}

TEST(DetectTest, ParamsValidate) {
  DetectorParams p;
  EXPECT_NO_THROW(p.Validate());
  p.sigma = 0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = DetectorParams();
  p.nms_radius = 0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p = DetectorParams();
  p.d_threshold = -1;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(DetectTest, DefaultMarginCoversDescriptorWindow) {
  EXPECT_EQ(DefaultBorderMargin(2.0, 16.0), 6 + 16 + 3);
  EXPECT_EQ(BenchmarkParams(0.05).border_margin, 25);
}

TEST(DetectTest, SquareRoomCenterIsMaximum) {
  const TernaryGrid room = testing::SquareRoom(79, 0.05);
  const SdfGrid sdf = ComputeSdf(room);
  const std::vector<Keypoint> keypoints = DetectKeypoints(sdf, BenchmarkParams(0.05));
  ASSERT_FALSE(keypoints.empty());
  bool found = false;
  for (const Keypoint& kp : keypoints) {
    if (kp.cls == KeypointClass::kMaximum && std::hypot(kp.grid.x - 40, kp.grid.y - 40) <= 0.5) {
      found = true;
      EXPECT_NEAR(kp.position.x, 0.0, 0.025);
      EXPECT_NEAR(kp.position.y, 0.0, 0.025);
      EXPECT_NEAR(kp.sdf_value, 2.0, 0.05);
    }
  }
  EXPECT_TRUE(found);

  DetectorParams masked = BenchmarkParams(0.05);
  masked.d_threshold = 0.5;
  for (const Keypoint& kp : DetectKeypoints(sdf, masked)) {
    EXPECT_GT(std::hypot(kp.grid.x - 40, kp.grid.y - 40), 5.0);
    EXPECT_LE(kp.sdf_value, 0.5);
  }
}

TEST(DetectTest, SingleObstacleDetectionsHugTheObstacle) {
  std::vector<std::string> rows(61, std::string(61, '.'));
  rows[30][30] = '#';
  const SdfGrid sdf = ComputeSdf(testing::GridFromText(rows, 0.05));
  const DetectorParams params;
  const DetectionFields fields = ComputeDetectionFields(sdf, params);
  const std::vector<Keypoint> keypoints = DetectKeypoints(sdf, fields, params);
  for (const Keypoint& kp : keypoints) {
    EXPECT_NE(kp.cls, KeypointClass::kMaximum);
    EXPECT_LE(std::hypot(kp.grid.x - 30, kp.grid.y - 30), 3 * params.sigma + 3);
  }
  // The cone far from the obstacle has near-zero curvature product.
  for (int r = 0; r < 61; ++r) {
    for (int c = 0; c < 61; ++c) {
      const std::size_t i = sdf.geometry.Index(c, r);
      if (fields.hessian.valid[i] && std::hypot(c - 30, r - 30) > 10) {
        EXPECT_LT(std::abs(fields.doh[i]), params.detection_threshold);
      }
    }
  }
}

// Every detection satisfies the selection predicates directly.
void CheckPostConditions(const SdfGrid& sdf, const DetectorParams& params) {
  const DetectionFields fields = ComputeDetectionFields(sdf, params);
  const std::vector<Keypoint> keypoints = DetectKeypoints(sdf, fields, params);
  const GridGeometry& g = sdf.geometry;
  for (std::size_t k = 0; k < keypoints.size(); ++k) {
    const Keypoint& kp = keypoints[k];
    if (k > 0) EXPECT_GE(std::abs(keypoints[k - 1].response), std::abs(kp.response));
    // Recover the detection cell from the refined position.
    int cell_c = -1, cell_r = -1;
    for (int r = static_cast<int>(std::floor(kp.grid.y));
         r <= static_cast<int>(std::ceil(kp.grid.y)); ++r) {
      for (int c = static_cast<int>(std::floor(kp.grid.x));
           c <= static_cast<int>(std::ceil(kp.grid.x)); ++c) {
        if (std::abs(c - kp.grid.x) <= 0.5 && std::abs(r - kp.grid.y) <= 0.5 &&
            g.Contains(c, r) && fields.doh[g.Index(c, r)] == kp.response) {
          cell_c = c;
          cell_r = r;
        }
      }
    }
    ASSERT_GE(cell_c, 0) << "no detection cell for keypoint " << k;
    const double magnitude = std::abs(kp.response);
    EXPECT_GT(magnitude, params.detection_threshold);
    for (int dr = -params.nms_radius; dr <= params.nms_radius; ++dr) {
      for (int dc = -params.nms_radius; dc <= params.nms_radius; ++dc) {
        const int c = cell_c + dc, r = cell_r + dr;
        if ((dr == 0 && dc == 0) || !g.Contains(c, r)) continue;
        if (!fields.hessian.valid[g.Index(c, r)]) continue;
        EXPECT_LE(std::abs(fields.doh[g.Index(c, r)]), magnitude);
      }
    }
    for (int r = cell_r - params.border_margin + 1; r <= cell_r + params.border_margin - 1; ++r) {
      for (int c = cell_c - params.border_margin + 1; c <= cell_c + params.border_margin - 1;
           ++c) {
        ASSERT_TRUE(g.Contains(c, r));
        EXPECT_TRUE(fields.support[g.Index(c, r)]);
      }
    }
    EXPECT_GT(kp.sdf_value, 0.0);
    EXPECT_LE(kp.sdf_value, params.d_threshold);
    const HessianEntries h = fields.hessian.at(cell_c, cell_r);
    const double det = Determinant(h), trace = h.xx + h.yy;
    EXPECT_EQ(kp.cls, Classify(h));
    switch (kp.cls) {
      case KeypointClass::kMaximum: EXPECT_TRUE(det > 0 && trace < 0); break;
      case KeypointClass::kMinimum: EXPECT_TRUE(det > 0 && trace > 0); break;
      case KeypointClass::kSaddle: EXPECT_LT(det, 0); break;
    }
    EXPECT_EQ(kp.position, g.GridToMetric(kp.grid));
  }
}

TEST(DetectTest, PostConditionsOnBenchmarkSubmaps) {
  for (int i = 0; i < 6; ++i) {
    const TernaryGrid t = BenchmarkGrid(i);
    CheckPostConditions(ComputeSdf(t), BenchmarkParams(t.geometry().resolution));
  }
  DetectorParams loose = BenchmarkParams(0.05);
  loose.barrier = Barrier::kUnknown;
  loose.d_threshold = 1.0;
  loose.nms_radius = 1;
  CheckPostConditions(ComputeSdf(BenchmarkGrid(1)), loose);
}

TEST(DetectTest, TranslationEquivariance) {
  const TernaryGrid base = Pad(BenchmarkGrid(0), 6, CellState::kUnknown);
  const TernaryGrid moved = testing::Shift(base, 4, -3, CellState::kUnknown);
  const DetectorParams params = BenchmarkParams(0.05);
  const std::vector<Keypoint> a = DetectKeypoints(ComputeSdf(base), params);
  const std::vector<Keypoint> b = DetectKeypoints(ComputeSdf(moved), params);
  ASSERT_FALSE(a.empty());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(b[i].grid.x, a[i].grid.x + 4, 1e-9);
    EXPECT_NEAR(b[i].grid.y, a[i].grid.y - 3, 1e-9);
    EXPECT_EQ(b[i].cls, a[i].cls);
    EXPECT_NEAR(b[i].response, a[i].response, 1e-9);
  }
}

TEST(DetectTest, QuarterTurnEquivariance) {
  const TernaryGrid base = BenchmarkGrid(3);
  const TernaryGrid turned = QuarterTurn(base);
  const DetectorParams params = BenchmarkParams(0.05);
  const std::vector<Keypoint> a = DetectKeypoints(ComputeSdf(base), params);
  const std::vector<Keypoint> b = DetectKeypoints(ComputeSdf(turned), params);
  ASSERT_FALSE(a.empty());
  ASSERT_EQ(a.size(), b.size());
  for (const Keypoint& kp : a) {
    const double x = base.height() - 1 - kp.grid.y, y = kp.grid.x;
    bool found = false;
    for (const Keypoint& other : b) {
      if (std::abs(other.grid.x - x) < 1e-6 && std::abs(other.grid.y - y) < 1e-6) {
        EXPECT_EQ(other.cls, kp.cls);
        EXPECT_NEAR(other.response, kp.response, 1e-9);
        found = true;
      }
    }
    EXPECT_TRUE(found) << kp.grid.x << "," << kp.grid.y;
  }
}

TEST(DetectTest, MaskingIsMonotone) {
  const SdfGrid sdf = ComputeSdf(BenchmarkGrid(2));
  DetectorParams params = BenchmarkParams(0.05);
  std::vector<std::vector<Keypoint>> sets;
  for (double d : {0.25, 0.5, 1.0, 1.5, 2.0, std::numeric_limits<double>::infinity()}) {
    params.d_threshold = d;
    sets.push_back(DetectKeypoints(sdf, params));
  }
  for (std::size_t s = 0; s + 1 < sets.size(); ++s) {
    EXPECT_LE(sets[s].size(), sets[s + 1].size());
    for (const Keypoint& kp : sets[s]) {
      bool found = false;
      for (const Keypoint& other : sets[s + 1]) found |= other.grid == kp.grid;
      EXPECT_TRUE(found);
    }
  }
}

}  // namespace
}  // namespace locus
