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

#include "locus/grid_io.h"

#include <cstring>
#include <filesystem>

#include "gtest/gtest.h"
#include "locus/errors.h"
#include "locus/random.h"
#include "locus/sdf.h"
#include "test_util.h"

namespace locus {
namespace {

using testing::Geometry;

Submap RandomSubmap(Rng& rng) {
  const int w = rng.IntInRange(1, 40);
  const int h = rng.IntInRange(1, 40);
  std::vector<float> cells(static_cast<std::size_t>(w) * h);
  for (float& c : cells) {
    c = rng.Uniform() < 0.2 ? kUnknownProbability : static_cast<float>(rng.Uniform());
  }
  Submap s;
  s.id = "m" + std::to_string(rng.Index(1000));
  s.pose = Pose2(rng.Uniform(-50, 50), rng.Uniform(-50, 50), rng.Uniform(-kPi, kPi));
  s.grid = OccupancyGrid(
      Geometry(w, h, rng.Uniform(0.01, 0.5),
               Pose2(rng.Uniform(-5, 5), rng.Uniform(-5, 5), rng.Uniform(-kPi, kPi))),
      std::move(cells));
  return s;
}

std::string Header(const std::string& value_line = "") {
  return "locus-grid 1\nwidth 2\nheight 2\nresolution 0.05\norigin 0 0 0\n" + value_line +
         "encoding float32\n\n";
}

std::string Payload(std::initializer_list<float> values) {
  std::string out;
  for (float v : values) {
    char b[4];
    std::memcpy(b, &v, 4);
    out.append(b, 4);
  }
  return out;
}

ParseError::Kind KindOf(const std::string& bytes) {
  try {
    ParseGrid(bytes);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a parse error";
  return ParseError::Kind::kMalformedRecord;
}

TEST(GridIoTest, TwoByTwoExample) {
  const Submap s =
      ParseGrid(Header() + Payload({0.1f, 0.9f, kUnknownProbability, 0.5f}));
  ASSERT_EQ(s.grid.width(), 2);
  EXPECT_FLOAT_EQ(s.grid.at(0, 0), 0.1f);
  EXPECT_FLOAT_EQ(s.grid.at(1, 0), 0.9f);
  EXPECT_TRUE(s.grid.IsUnknown(0, 1));
  EXPECT_FLOAT_EQ(s.grid.at(1, 1), 0.5f);
  EXPECT_EQ(s.grid.resolution(), 0.05);
  EXPECT_EQ(ParseGrid(SerializeGrid(s)), s);
}

TEST(GridIoTest, ValueOutOfRange) {
  EXPECT_EQ(KindOf(Header() + Payload({0.1f, 1.3f, 0.2f, 0.5f})),
            ParseError::Kind::kValueOutOfRange);
}

TEST(GridIoTest, TruncatedPayload) {
  EXPECT_EQ(KindOf(Header() + Payload({0.1f, 0.2f, 0.3f})),
            ParseError::Kind::kTruncatedPayload);
}

TEST(GridIoTest, MalformedHeader) {
  EXPECT_EQ(KindOf("locus-grid 2\n\n"), ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(KindOf("locus-grid 1\nwidth 2\n\n"), ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(KindOf(Header("colour blue\n") + Payload({0, 0, 0, 0})),
            ParseError::Kind::kMalformedHeader);
  EXPECT_EQ(KindOf("locus-grid 1\nwidth -2\nheight 2\nresolution 0.05\norigin 0 0 0\n"
                   "encoding float32\n\n"),
            ParseError::Kind::kMalformedHeader);
}

TEST(GridIoTest, ErrorsNameByteOffset) {
  const std::string bytes = Header() + Payload({0.1f, 0.2f, 1.5f, 0.5f});
  try {
    ParseGrid(bytes);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.byte_offset(), Header().size() + 8);
  }
}

TEST(GridIoTest, RandomRoundTrips) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const Submap s = RandomSubmap(rng);
    const std::string bytes = SerializeGrid(s);
    const Submap back = ParseGrid(bytes);
    ASSERT_EQ(back, s);
    EXPECT_EQ(SerializeGrid(back), bytes);
  }
}

TEST(GridIoTest, FileRoundTripAndIoError) {
  Rng rng(1);
  const Submap s = RandomSubmap(rng);
  const std::string path = testing::TempPath("round.grid");
  SaveGrid(s, path);
  EXPECT_EQ(LoadGrid(path), s);
  EXPECT_THROW(SaveGrid(s, "/nonexistent-dir/x/y.grid"), IoError);
  EXPECT_THROW(LoadGrid("/nonexistent-dir/none.grid"), IoError);
}

TEST(GridIoTest, SdfRoundTrip) {
  Rng rng(8);
  const TernaryGrid t = testing::RandomTernary(rng, 13, 7, 0.4, 0.2);
  const SdfGrid once = ParseSdf(SerializeSdf(ComputeSdf(t)));
  const SdfGrid twice = ParseSdf(SerializeSdf(once));
  EXPECT_EQ(once, twice);
  const SdfGrid exact = ComputeSdf(t);
  EXPECT_EQ(once.valid, exact.valid);
  for (std::size_t i = 0; i < exact.values.size(); ++i) {
    EXPECT_NEAR(once.values[i], exact.values[i], 1e-5);
  }
}

TEST(GridIoTest, PgmImport) {
  const std::string dir = testing::TempPath("pgm");
  std::filesystem::create_directories(dir);
  // Top row first in the file: (255, 205) above (0, 51).
  WritePgm(dir + "/m.pgm", 2, 2, {255, 205, 0, 51});
  WriteFile(dir + "/m.hdr",
            "locus-grid 1\nwidth 2\nheight 2\nresolution 0.05\norigin 0 0 0\n"
            "encoding pgm8\n\n");
  const Submap s = ImportPgm(dir + "/m.pgm", dir + "/m.hdr");
  EXPECT_FLOAT_EQ(s.grid.at(0, 1), 1.0f);
  EXPECT_TRUE(s.grid.IsUnknown(1, 1));
  EXPECT_FLOAT_EQ(s.grid.at(0, 0), 0.0f);
  EXPECT_FLOAT_EQ(s.grid.at(1, 0), 0.2f);
  const Submap other = ImportPgm(dir + "/m.pgm", dir + "/m.hdr", 0);
  EXPECT_TRUE(other.grid.IsUnknown(0, 0));
  EXPECT_FALSE(other.grid.IsUnknown(1, 1));

  WriteFile(dir + "/bad.hdr",
            "locus-grid 1\nwidth 3\nheight 2\nresolution 0.05\norigin 0 0 0\n"
            "encoding pgm8\n\n");
  EXPECT_THROW(ImportPgm(dir + "/m.pgm", dir + "/bad.hdr"), ParseError);
}

TEST(GridIoTest, SdfPixels) {
  const TernaryGrid t = testing::GridFromText({"#..", "?.."});
  const std::vector<std::uint8_t> px = SdfToPixels(ComputeSdf(t));
  // Unknown is mid-gray; the occupied cell holds the minimum.
  EXPECT_EQ(px[3], 128);
  EXPECT_EQ(px[0], 0);
}

}  // namespace
}  // namespace locus
