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

#include "locus/feature_io.h"

#include <filesystem>

#include "gtest/gtest.h"
#include "locus/dataset.h"
#include "locus/errors.h"
#include "locus/features.h"
#include "locus/grid_io.h"
#include "locus/sdf.h"
#include "test_util.h"

namespace locus {
namespace {

SubmapFeatures BenchmarkFeatures(int index) {
  return ExtractFeatures(
      ComputeSdf(Binarize(testing::SmallBenchmark().dataset.submaps.at(index).grid)),
      DetectorParams(), DescriptorParams());
}

TEST(FeatureIoTest, KeypointsRoundTrip) {
  const Submap& s = testing::SmallBenchmark().dataset.submaps.at(0);
  const SubmapFeatures f = BenchmarkFeatures(0);
  ASSERT_FALSE(f.keypoints.empty());
  const std::string csv = KeypointsToCsv(f.keypoints);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x_m,y_m,class,response,sdf_value");
  const std::vector<Keypoint> back = ParseKeypointsCsv(csv, s.grid.geometry());
  ASSERT_EQ(back.size(), f.keypoints.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].position, f.keypoints[i].position);
    EXPECT_EQ(back[i].cls, f.keypoints[i].cls);
    EXPECT_EQ(back[i].response, f.keypoints[i].response);
    EXPECT_EQ(back[i].sdf_value, f.keypoints[i].sdf_value);
    EXPECT_NEAR(back[i].grid.x, f.keypoints[i].grid.x, 1e-9);
    EXPECT_NEAR(back[i].grid.y, f.keypoints[i].grid.y, 1e-9);
  }
  EXPECT_EQ(KeypointsToCsv(back), csv);
}

TEST(FeatureIoTest, DescriptorsRoundTrip) {
  const SubmapFeatures f = BenchmarkFeatures(1);
  ASSERT_FALSE(f.descriptors.empty());
  const std::string csv = DescriptorsToCsv(f.descriptors);
  EXPECT_EQ(csv.rfind("index,class,dominant_orientation,bin_0,", 0), 0u);
  const std::vector<Descriptor> back = ParseDescriptorsCsv(csv);
  ASSERT_EQ(back.size(), f.descriptors.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].histogram, f.descriptors[i].histogram);
    EXPECT_EQ(back[i].distance_term, f.descriptors[i].distance_term);
    EXPECT_EQ(back[i].cls, f.descriptors[i].cls);
    EXPECT_EQ(back[i].dominant_orientation, f.descriptors[i].dominant_orientation);
  }
  const std::vector<int> indices(f.descriptors.size(), 7);
  EXPECT_EQ(DescriptorsToCsv(f.descriptors, indices).find("\n7,"),
            csv.find('\n'));
}

TEST(FeatureIoTest, MalformedRowsReportPosition) {
  EXPECT_THROW(ParseDescriptorsCsv("nonsense\n"), ParseError);
  try {
    ParseKeypointsCsv("x_m,y_m,class,response,sdf_value\n1,2,maximum,0.1,0.2\n1,2,ridge,0,0\n",
                      testing::Geometry(4, 4));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::kValueOutOfRange);
    EXPECT_GT(e.byte_offset(), 0u);
  }
}

TEST(FeatureIoTest, CurveAndMatchCsv) {
  PrCurve curve;
  curve.points.push_back({3, 2, 1, 0, 2.0 / 3.0, 1.0});
  const std::string csv = CurveToCsv(curve);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "min_inliers,tp,fp,fn,precision,recall");
  EXPECT_NE(csv.find("\n3,2,1,0,"), std::string::npos);

  MatchResult m;
  m.accepted = true;
  m.total_correspondences = 4;
  m.inliers = {{0, 1, 0.5}, {2, 3, 0.25}};
  const std::string row = MatchResultToCsv(m);
  EXPECT_EQ(row.substr(0, row.find('\n')), "accepted,tx,ty,theta,n_inliers,n_correspondences");
  EXPECT_NE(row.find(",2,4"), std::string::npos);
}

TEST(DatasetTest, SaveLoadRoundTrip) {
  const Dataset& ds = testing::SmallBenchmark().dataset;
  const std::string dir = testing::TempPath("dataset");
  SaveDataset(ds, dir);
  EXPECT_TRUE(std::filesystem::exists(dir + "/poses.txt"));
  const Dataset back = LoadDataset(dir);
  ASSERT_EQ(back.submaps.size(), ds.submaps.size());
  for (std::size_t i = 0; i < ds.submaps.size(); ++i) EXPECT_EQ(back.submaps[i], ds.submaps[i]);
  EXPECT_EQ(back.pairs, ds.pairs);

  std::filesystem::remove(dir + "/pairs.txt");
  EXPECT_TRUE(LoadDataset(dir).pairs.empty());
  WriteFile(dir + "/poses.txt", "s0000 1 2\n");
  EXPECT_THROW(LoadDataset(dir), ParseError);
  EXPECT_THROW(LoadDataset(dir + "/missing"), IoError);
}

}  // namespace
}  // namespace locus
