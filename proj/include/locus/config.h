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

#ifndef LOCUS_CONFIG_H_
#define LOCUS_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "locus/describe.h"
#include "locus/detect.h"
#include "locus/grid.h"
#include "locus/match.h"

namespace locus {

struct EvalParams {
  double overlap_threshold = 0.3;
  double pose_tolerance_m = 0.5;
  double pose_tolerance_deg = 5.0;
  // Score on label agreement alone, ignoring the recovered transform.
  bool decision_only = false;
};

// Every tunable of the pipeline as flat key=value text. Lines starting with
// '#' are comments; unknown keys are rejected with ConfigError.
struct Config {
  double p_occ = kDefaultOccupiedThreshold;
  DetectorParams detector;
  DescriptorParams descriptor;
  MatchParams match;
  EvalParams eval;

  void Set(std::string_view key, std::string_view value);
  std::string Get(std::string_view key) const;
  static const std::vector<std::string>& Keys();

  // Applies every assignment in text on top of the current values.
  void Merge(std::string_view text);
  static Config Parse(std::string_view text);
  static Config Load(const std::string& path);

  // Fully resolved configuration, one key=value per line in Keys() order.
  std::string ToString() const;

  // Throws ConfigError naming the first invalid group.
  void Validate() const;
};

// "key = v1, v2, ..." lines; the cartesian product is explored in file order
// with the first key varying slowest.
struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  static ParamGrid Parse(std::string_view text);
  std::size_t size() const;
  // Assignment list of the index-th grid cell.
  std::vector<std::pair<std::string, std::string>> Cell(std::size_t index) const;
};

std::string Trim(std::string_view text);
std::vector<std::string> SplitList(std::string_view text, char separator);
double ParseDouble(std::string_view text);
bool ParseBool(std::string_view text);

}  // namespace locus

#endif  // LOCUS_CONFIG_H_
