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

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "locus/config.h"
#include "locus/dataset.h"
#include "locus/errors.h"
#include "locus/eval.h"
#include "locus/feature_io.h"
#include "locus/features.h"
#include "locus/grid_io.h"
#include "locus/match.h"
#include "locus/render.h"
#include "locus/sdf.h"
#include "locus/synth.h"

namespace locus {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigOptions {
  std::string path;
  bool print = false;
};

void AddConfigOptions(CLI::App* command, ConfigOptions& options) {
  command->add_option("--config,--params", options.path, "key=value parameter file");
  command->add_flag("--print-config", options.print,
                    "print the resolved configuration and exit");
}

Config ResolveConfig(const ConfigOptions& options) {
  Config config;
  if (!options.path.empty()) config.Merge(ReadFile(options.path));
  return config;
}

std::uint64_t ParseSeed(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("seed must be a non-negative integer, got '" + text + "'");
  }
  return value;
}

// --seed wins, then LOCUS_SEED, then the fallback.
std::uint64_t ResolveSeed(const std::optional<std::string>& flag, std::uint64_t fallback) {
  if (flag) return ParseSeed(*flag);
  if (const char* env = std::getenv("LOCUS_SEED"); env != nullptr && *env != '\0') {
    return ParseSeed(env);
  }
  return fallback;
}

void Require(const std::string& value, const std::string& name) {
  if (value.empty()) throw UsageError("missing required argument " + name);
}

SdfGrid LoadSdfInput(const std::string& path) { return LoadSdf(path); }

ordered_json RecallSummary(const PrCurve& curve) {
  ordered_json recall = ordered_json::object();
  for (double p : {1.0, 0.99, 0.95, 0.9}) {
    char key[8];
    std::snprintf(key, sizeof(key), "%.2f", p);
    recall[key] = RecallAtPrecision(curve, p);
  }
  return recall;
}

std::string ThresholdName(double d) { return std::isinf(d) ? "inf" : FormatDouble(d); }

struct EvalInputs {
  std::string dataset;
  int pairs = -1;
  std::optional<std::string> seed;
  int jobs = 1;
  bool decision_only = false;
  bool no_rotate = false;
};

void AddEvalInputs(CLI::App* command, EvalInputs& inputs) {
  command->add_option("dataset", inputs.dataset, "dataset directory");
  command->add_option("--pairs", inputs.pairs,
                      "sample this many random pairs instead of the listed ones");
  command->add_option("--seed", inputs.seed, "seed for pair sampling and rotations");
  command->add_option("--jobs", inputs.jobs, "worker threads")->check(CLI::PositiveNumber);
  command->add_flag("--decision-only", inputs.decision_only,
                    "score label agreement without checking the transform");
  command->add_flag("--no-rotate", inputs.no_rotate, "do not rotate the query submap");
}

struct LoadedEval {
  Dataset dataset;
  std::vector<LabeledPair> pairs;
};

LoadedEval LoadEval(const EvalInputs& inputs, Config& config) {
  Require(inputs.dataset, "<dataset dir>");
  if (inputs.decision_only) config.eval.decision_only = true;
  LoadedEval loaded;
  loaded.dataset = LoadDataset(inputs.dataset);
  const std::uint64_t seed = ResolveSeed(inputs.seed, 0);
  std::vector<std::pair<int, int>> pairs = loaded.dataset.pairs;
  if (inputs.pairs >= 0 || pairs.empty()) {
    pairs = SamplePairs(static_cast<int>(loaded.dataset.submaps.size()),
                        inputs.pairs >= 0 ? inputs.pairs : 1000, seed);
  }
  if (pairs.empty()) throw EmptyDatasetError("no pairs to evaluate");
  PairOptions options;
  options.seed = seed;
  options.rotate = !inputs.no_rotate;
  options.overlap_threshold = config.eval.overlap_threshold;
  loaded.pairs = LabelPairs(loaded.dataset.submaps, pairs, options);
  return loaded;
}

int CountMatches(const std::vector<LabeledPair>& pairs) {
  int n = 0;
  for (const LabeledPair& p : pairs) n += p.is_match;
  return n;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-space place recognition on 2D occupancy submaps", "locus"};
  app.require_subcommand(1);
  std::function<int()> action;
  ConfigOptions config_options;

  // synth
  std::string synth_spec, synth_out;
  std::optional<std::string> synth_seed;
  auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark dataset");
  synth->add_option("--spec", synth_spec, "world and plan key=value file");
  synth->add_option("--out", synth_out, "output directory");
  synth->add_option("--seed", synth_seed, "overrides the spec seed");
  synth->callback([&] {
    action = [&] {
      Require(synth_out, "--out");
      SynthSpec spec = synth_spec.empty() ? SynthSpec{} : ParseSynthSpec(ReadFile(synth_spec));
      spec.world.seed = ResolveSeed(synth_seed, spec.world.seed);
      const SyntheticDataset data = GenerateBenchmark(spec.world, spec.plan);
      SaveDataset(data.dataset, synth_out);
      std::vector<std::uint8_t> pixels(data.world.occupied.size());
      for (int r = 0; r < data.world.height; ++r) {
        for (int c = 0; c < data.world.width; ++c) {
          pixels[static_cast<std::size_t>(data.world.height - 1 - r) * data.world.width + c] =
              data.world.IsOccupied(c, r) ? 0 : 255;
        }
      }
      WritePgm((fs::path(synth_out) / "world.pgm").string(), data.world.width,
               data.world.height, pixels);
      out << "wrote " << data.dataset.submaps.size() << " submaps and "
          << data.dataset.pairs.size() << " pairs to " << synth_out << "\n";
      return kExitOk;
    };
  });

  // sdf
  std::string sdf_in, sdf_out, sdf_pgm;
  auto* sdf = app.add_subcommand("sdf", "occupancy grid to signed distance field");
  sdf->add_option("input", sdf_in, "input .grid file");
  sdf->add_option("output", sdf_out, "output .sdf file");
  sdf->add_option("--pgm", sdf_pgm, "also write a PGM rendering");
  AddConfigOptions(sdf, config_options);
  sdf->callback([&] {
    action = [&] {
      const Config config = ResolveConfig(config_options);
      Require(sdf_in, "<in.grid>");
      Require(sdf_out, "<out.sdf>");
      const Submap submap = LoadGrid(sdf_in);
      const SdfGrid field = ComputeSdf(Binarize(submap.grid, config.p_occ));
      SaveSdf(field, sdf_out);
      if (!sdf_pgm.empty()) ExportSdfPgm(field, sdf_pgm);
      return kExitOk;
    };
  });

  // detect
  std::string detect_in, detect_out;
  auto* detect = app.add_subcommand("detect", "detect keypoints on an SDF");
  detect->add_option("input", detect_in, "input .sdf file");
  detect->add_option("--out", detect_out, "keypoint CSV");
  AddConfigOptions(detect, config_options);
  detect->callback([&] {
    action = [&] {
      const Config config = ResolveConfig(config_options);
      Require(detect_in, "<in.sdf>");
      Require(detect_out, "--out");
      const SdfGrid field = LoadSdfInput(detect_in);
      const DetectorParams params = ResolveDetectorParams(config.detector, config.descriptor,
                                                          field.geometry.resolution);
      WriteFile(detect_out, KeypointsToCsv(DetectKeypoints(field, params)));
      return kExitOk;
    };
  });

  // describe
  std::string describe_in, describe_keypoints, describe_out;
  auto* describe = app.add_subcommand("describe", "describe keypoints on an SDF");
  describe->add_option("input", describe_in, "input .sdf file");
  describe->add_option("keypoints", describe_keypoints, "keypoint CSV");
  describe->add_option("--out", describe_out, "descriptor CSV");
  AddConfigOptions(describe, config_options);
  describe->callback([&] {
    action = [&] {
      const Config config = ResolveConfig(config_options);
      Require(describe_in, "<in.sdf>");
      Require(describe_keypoints, "<keypoints.csv>");
      Require(describe_out, "--out");
      const SdfGrid field = LoadSdfInput(describe_in);
      std::vector<Keypoint> keypoints =
          ParseKeypointsCsv(ReadFile(describe_keypoints), field.geometry);
      std::vector<int> kept;
      const SubmapFeatures features = DescribeKeypoints(
          field, std::move(keypoints), config.detector, config.descriptor, &kept);
      WriteFile(describe_out, DescriptorsToCsv(features.descriptors, kept));
      return kExitOk;
    };
  });

  // match
  std::string match_a, match_b, match_out, match_pairs;
  std::optional<std::string> match_seed;
  auto* match = app.add_subcommand("match", "match two SDFs and estimate T_ab");
  match->add_option("a", match_a, "reference .sdf");
  match->add_option("b", match_b, "query .sdf");
  match->add_option("--out", match_out, "result CSV");
  match->add_option("--dump-pairs", match_pairs, "inlier coordinate pairs CSV");
  match->add_option("--seed", match_seed, "overrides rng_seed");
  AddConfigOptions(match, config_options);
  match->callback([&] {
    action = [&] {
      Config config = ResolveConfig(config_options);
      Require(match_a, "<a.sdf>");
      Require(match_b, "<b.sdf>");
      Require(match_out, "--out");
      config.match.rng_seed = ResolveSeed(match_seed, config.match.rng_seed);
      const SubmapFeatures a =
          ExtractFeatures(LoadSdfInput(match_a), config.detector, config.descriptor);
      const SubmapFeatures b =
          ExtractFeatures(LoadSdfInput(match_b), config.detector, config.descriptor);
      const MatchResult result = MatchSubmaps(a, b, config.match);
      WriteFile(match_out, MatchResultToCsv(result));
      if (!match_pairs.empty()) {
        WriteFile(match_pairs, InliersToCsv(result, a.keypoints, b.keypoints));
      }
      return kExitOk;
    };
  });

  // eval
  EvalInputs eval_inputs;
  std::string eval_out, eval_summary, eval_pairs_out;
  auto* eval = app.add_subcommand("eval", "precision-recall evaluation on a dataset");
  AddEvalInputs(eval, eval_inputs);
  eval->add_option("--out", eval_out, "curve CSV");
  eval->add_option("--summary", eval_summary, "JSON summary");
  eval->add_option("--pairs-out", eval_pairs_out, "per-pair outcome CSV");
  AddConfigOptions(eval, config_options);
  eval->callback([&] {
    action = [&] {
      Config config = ResolveConfig(config_options);
      Require(eval_out, "--out");
      const LoadedEval loaded = LoadEval(eval_inputs, config);
      const Evaluation result =
          Evaluate(loaded.dataset.submaps, loaded.pairs, config, eval_inputs.jobs);
      WriteFile(eval_out, CurveToCsv(result.curve));
      if (!eval_pairs_out.empty()) {
        WriteFile(eval_pairs_out,
                  PairOutcomesToCsv(loaded.dataset.submaps, result.pairs, result.outcomes));
      }
      ordered_json summary;
      summary["pairs"] = loaded.pairs.size();
      summary["matching_pairs"] = CountMatches(loaded.pairs);
      summary["mean_keypoints"] = result.mean_keypoints;
      summary["recall_at_precision"] = RecallSummary(result.curve);
      if (!eval_summary.empty()) WriteFile(eval_summary, summary.dump(2) + "\n");
      out << summary.dump(2) << "\n";
      return kExitOk;
    };
  });

  // ablate
  EvalInputs ablate_inputs;
  std::string ablate_out_dir;
  std::vector<double> d_thresholds = {0.5, 1.0, 1.5, 2.0};
  auto* ablate = app.add_subcommand("ablate", "free-space ablation over d_threshold");
  AddEvalInputs(ablate, ablate_inputs);
  ablate->add_option("--d-thresholds", d_thresholds, "comma separated, meters")
      ->delimiter(',');
  ablate->add_option("--out-dir", ablate_out_dir, "directory for curves and summary.json");
  AddConfigOptions(ablate, config_options);
  ablate->callback([&] {
    action = [&] {
      Config config = ResolveConfig(config_options);
      Require(ablate_out_dir, "--out-dir");
      for (double d : d_thresholds) {
        if (!(d > 0.0)) throw UsageError("d-thresholds must be positive");
      }
      const LoadedEval loaded = LoadEval(ablate_inputs, config);
      const std::vector<AblationRun> runs = AblateFreeSpace(
          loaded.dataset.submaps, loaded.pairs, config, d_thresholds, ablate_inputs.jobs);
      fs::create_directories(ablate_out_dir);
      ordered_json summary;
      summary["pairs"] = loaded.pairs.size();
      summary["matching_pairs"] = CountMatches(loaded.pairs);
      summary["runs"] = ordered_json::array();
      for (const AblationRun& run : runs) {
        const std::string name = ThresholdName(run.d_threshold);
        WriteFile((fs::path(ablate_out_dir) / ("curve_" + name + ".csv")).string(),
                  CurveToCsv(run.evaluation.curve));
        ordered_json entry;
        entry["d_threshold"] = name;
        entry["mean_keypoints"] = run.evaluation.mean_keypoints;
        entry["recall_at_precision"] = RecallSummary(run.evaluation.curve);
        summary["runs"].push_back(entry);
      }
      WriteFile((fs::path(ablate_out_dir) / "summary.json").string(), summary.dump(2) + "\n");
      out << summary.dump(2) << "\n";
      return kExitOk;
    };
  });

  // grid-search
  EvalInputs search_inputs;
  std::string search_grid, search_out, search_best;
  auto* search = app.add_subcommand("grid-search", "exhaustive parameter search");
  AddEvalInputs(search, search_inputs);
  search->add_option("--grid", search_grid, "file of 'key = v1, v2, ...' lines");
  search->add_option("--out", search_out, "table CSV");
  search->add_option("--best-config", search_best, "write the winning configuration");
  AddConfigOptions(search, config_options);
  search->callback([&] {
    action = [&] {
      Config config = ResolveConfig(config_options);
      Require(search_grid, "--grid");
      Require(search_out, "--out");
      const ParamGrid grid = ParamGrid::Parse(ReadFile(search_grid));
      const LoadedEval loaded = LoadEval(search_inputs, config);
      const GridSearchResult result = GridSearch(loaded.dataset.submaps, loaded.pairs, config,
                                                 grid, search_inputs.jobs);
      std::string table;
      for (const auto& axis : grid.axes) table += axis.first + ",";
      table += "recall_at_p1,mean_keypoints,best\n";
      for (std::size_t i = 0; i < result.cells.size(); ++i) {
        for (const auto& kv : result.cells[i].assignment) table += kv.second + ",";
        table += FormatDouble(result.cells[i].recall_at_p1) + "," +
                 FormatDouble(result.cells[i].mean_keypoints) + "," +
                 (i == result.best ? "1" : "0") + "\n";
      }
      WriteFile(search_out, table);
      if (!search_best.empty()) WriteFile(search_best, result.best_config.ToString());
      out << result.best_config.ToString();
      return kExitOk;
    };
  });

  // render
  std::vector<std::string> render_inputs;
  std::string render_out, render_keypoints;
  auto* render = app.add_subcommand(
      "render", "PGM overlay of keypoints on one SDF, or of inlier links between two");
  render->add_option("inputs", render_inputs, "one or two .sdf files");
  render->add_option("--out", render_out, "output PGM");
  render->add_option("--keypoints", render_keypoints, "draw these keypoints (single input)");
  AddConfigOptions(render, config_options);
  render->callback([&] {
    action = [&] {
      const Config config = ResolveConfig(config_options);
      Require(render_out, "--out");
      if (render_inputs.empty() || render_inputs.size() > 2) {
        throw UsageError("render takes one or two .sdf inputs");
      }
      const SdfGrid a = LoadSdfInput(render_inputs[0]);
      if (render_inputs.size() == 1) {
        std::vector<Keypoint> keypoints;
        if (!render_keypoints.empty()) {
          keypoints = ParseKeypointsCsv(ReadFile(render_keypoints), a.geometry);
        } else {
          keypoints = DetectKeypoints(a, ResolveDetectorParams(config.detector, config.descriptor,
                                                               a.geometry.resolution));
        }
        RenderKeypoints(a, keypoints).Save(render_out);
        return kExitOk;
      }
      const SdfGrid b = LoadSdfInput(render_inputs[1]);
      const SubmapFeatures fa = ExtractFeatures(a, config.detector, config.descriptor);
      const SubmapFeatures fb = ExtractFeatures(b, config.detector, config.descriptor);
      const MatchResult result = MatchSubmaps(fa, fb, config.match);
      RenderMatch(a, fa.keypoints, b, fb.keypoints, result).Save(render_out);
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (config_options.print) {
      out << ResolveConfig(config_options).ToString();
      return kExitOk;
    }
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace locus
