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

#include "locus/cli.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "locus/grid_io.h"
#include "test_util.h"

namespace locus {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "locus");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun run;
  run.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

std::string FirstLine(const std::string& text) { return text.substr(0, text.find('\n')); }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new std::string(testing::TempPath("cli"));
    fs::create_directories(*dir_);
    WriteFile(*dir_ + "/small.spec",
              "seed = 3\nmatching_pairs = 4\ndisjoint_pairs = 3\n");
    const CliRun run = Cli({"synth", "--spec", *dir_ + "/small.spec", "--out", *dir_ + "/data"});
    ASSERT_EQ(run.code, 0) << run.err;
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string Path(const std::string& name) { return *dir_ + "/" + name; }

  static std::string* dir_;
};

std::string* CliTest::dir_ = nullptr;

TEST_F(CliTest, SynthWritesDataset) {
  EXPECT_TRUE(fs::exists(Path("data/poses.txt")));
  EXPECT_TRUE(fs::exists(Path("data/pairs.txt")));
  EXPECT_TRUE(fs::exists(Path("data/s0000.grid")));
  EXPECT_TRUE(fs::exists(Path("data/world.pgm")));
}

TEST_F(CliTest, SdfSucceeds) {
  const CliRun run = Cli({"sdf", Path("data/s0000.grid"), Path("a.sdf"), "--pgm", Path("a.pgm")});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(fs::exists(Path("a.sdf")));
  EXPECT_TRUE(fs::exists(Path("a.pgm")));
}

TEST_F(CliTest, UsageErrors) {
  CliRun run = Cli({"sdf", Path("data/s0000.grid"), Path("x.sdf"), "--bogus"});
  EXPECT_EQ(run.code, 1);
  EXPECT_FALSE(fs::exists(Path("x.sdf")));
  run = Cli({"teleport"});
  EXPECT_EQ(run.code, 1);
  run = Cli({});
  EXPECT_EQ(run.code, 1);
  run = Cli({"detect", Path("a.sdf")});
  EXPECT_EQ(run.code, 1);
  EXPECT_NE(run.err.find("--out"), std::string::npos);
  WriteFile(Path("bad.cfg"), "sigma = 2\nvolume = 11\n");
  run = Cli({"sdf", Path("data/s0000.grid"), Path("x.sdf"), "--config", Path("bad.cfg")});
  EXPECT_EQ(run.code, 1);
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(Cli({"sdf", Path("missing.grid"), Path("x.sdf")}).code, 2);
  WriteFile(Path("junk.grid"), "locus-grid 7\n\n");
  const CliRun run = Cli({"sdf", Path("junk.grid"), Path("x.sdf")});
  EXPECT_EQ(run.code, 2);
  EXPECT_FALSE(run.err.empty());
}

TEST_F(CliTest, PrintConfig) {
  WriteFile(Path("tuned.cfg"), "sigma = 2.5\n");
  const CliRun run = Cli({"eval", "--print-config", "--config", Path("tuned.cfg")});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_NE(run.out.find("sigma=2.5\n"), std::string::npos);
  EXPECT_NE(run.out.find("detection_threshold=0.0025\n"), std::string::npos);
}

TEST_F(CliTest, StagePipeline) {
  ASSERT_EQ(Cli({"sdf", Path("data/s0000.grid"), Path("p0.sdf")}).code, 0);
  ASSERT_EQ(Cli({"sdf", Path("data/s0001.grid"), Path("p1.sdf")}).code, 0);
  CliRun run = Cli({"detect", Path("p0.sdf"), "--out", Path("p0.kp.csv")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(FirstLine(ReadFile(Path("p0.kp.csv"))), "x_m,y_m,class,response,sdf_value");
  run = Cli({"describe", Path("p0.sdf"), Path("p0.kp.csv"), "--out", Path("p0.desc.csv")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(ReadFile(Path("p0.desc.csv")).rfind("index,class,dominant_orientation,bin_0", 0), 0u);
  run = Cli({"match", Path("p0.sdf"), Path("p1.sdf"), "--out", Path("m.csv"), "--dump-pairs",
             Path("m.pairs.csv")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(FirstLine(ReadFile(Path("m.csv"))),
            "accepted,tx,ty,theta,n_inliers,n_correspondences");
  EXPECT_TRUE(fs::exists(Path("m.pairs.csv")));
  run = Cli({"render", Path("p0.sdf"), "--out", Path("p0.pgm")});
  EXPECT_EQ(run.code, 0) << run.err;
  run = Cli({"render", Path("p0.sdf"), Path("p1.sdf"), "--out", Path("m.pgm")});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(ReadFile(Path("m.pgm")).rfind("P5", 0), 0u);
}

TEST_F(CliTest, EvalIsReproducibleAcrossJobCounts) {
  CliRun run = Cli({"eval", Path("data"), "--out", Path("c1.csv"), "--summary", Path("s1.json"),
                 "--pairs-out", Path("p1.csv"), "--seed", "4", "--jobs", "1"});
  ASSERT_EQ(run.code, 0) << run.err;
  run = Cli({"eval", Path("data"), "--out", Path("c3.csv"), "--summary", Path("s3.json"),
             "--pairs-out", Path("p3.csv"), "--seed", "4", "--jobs", "3"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(FirstLine(ReadFile(Path("c1.csv"))), "min_inliers,tp,fp,fn,precision,recall");
  EXPECT_EQ(ReadFile(Path("c1.csv")), ReadFile(Path("c3.csv")));
  EXPECT_EQ(ReadFile(Path("s1.json")), ReadFile(Path("s3.json")));
  EXPECT_EQ(ReadFile(Path("p1.csv")), ReadFile(Path("p3.csv")));
  EXPECT_NE(ReadFile(Path("s1.json")).find("\"1.00\""), std::string::npos);
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  ASSERT_EQ(Cli({"eval", Path("data"), "--out", Path("e9.csv"), "--pairs-out",
                 Path("e9.pairs.csv"), "--seed", "9"}).code, 0);
  ::setenv("LOCUS_SEED", "9", 1);
  const CliRun run = Cli({"eval", Path("data"), "--out", Path("env.csv"), "--pairs-out",
                       Path("env.pairs.csv")});
  ::unsetenv("LOCUS_SEED");
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(ReadFile(Path("env.pairs.csv")), ReadFile(Path("e9.pairs.csv")));
  ::setenv("LOCUS_SEED", "nine", 1);
  EXPECT_EQ(Cli({"eval", Path("data"), "--out", Path("bad.csv")}).code, 1);
  ::unsetenv("LOCUS_SEED");
}

TEST_F(CliTest, AblateAndGridSearch) {
  CliRun run = Cli({"ablate", Path("data"), "--d-thresholds", "0.5,2.0", "--out-dir",
                 Path("ablate"), "--jobs", "2"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(fs::exists(Path("ablate/curve_inf.csv")));
  EXPECT_TRUE(fs::exists(Path("ablate/curve_0.5.csv")));
  EXPECT_TRUE(fs::exists(Path("ablate/curve_2.csv")));
  EXPECT_TRUE(fs::exists(Path("ablate/summary.json")));

  WriteFile(Path("grid.txt"), "sigma = 1.5, 2\n");
  run = Cli({"grid-search", Path("data"), "--grid", Path("grid.txt"), "--out",
             Path("search.csv"), "--best-config", Path("best.cfg"), "--jobs", "2"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(fs::exists(Path("search.csv")));
  const CliRun printed = Cli({"eval", "--print-config", "--config", Path("best.cfg")});
  EXPECT_EQ(printed.code, 0);
  EXPECT_EQ(printed.out, ReadFile(Path("best.cfg")));
}

}  // namespace
}  // namespace locus
