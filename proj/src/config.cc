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

#include "locus/config.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "locus/errors.h"
#include "locus/grid_io.h"

namespace locus {

std::string Trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> SplitList(std::string_view text, char separator) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(separator, start);
    const std::string item =
        Trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                              : end - start));
    if (!item.empty()) items.push_back(item);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return items;
}

double ParseDouble(std::string_view text) {
  const std::string s = Trim(text);
  if (s == "inf" || s == "infinity" || s == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return value;
}

namespace {

long long ParseInteger(std::string_view text) {
  const std::string s = Trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  return value;
}

int ParseInt(std::string_view text) {
  const long long v = ParseInteger(text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError("integer out of range: '" + std::string(text) + "'");
  }
  return static_cast<int>(v);
}

std::string FormatBool(bool b) { return b ? "true" : "false"; }

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return FormatDouble(v);
}

struct Field {
  std::function<void(Config&, std::string_view)> set;
  std::function<std::string(Config&)> get;
};

template <typename Member>
Field DoubleField(Member member) {
  return {[member](Config& c, std::string_view v) { std::invoke(member, c) = ParseDouble(v); },
          [member](Config& c) { return FormatNumber(std::invoke(member, c)); }};
}

template <typename Member>
Field IntField(Member member) {
  return {[member](Config& c, std::string_view v) { std::invoke(member, c) = ParseInt(v); },
          [member](Config& c) { return std::to_string(std::invoke(member, c)); }};
}

template <typename Member>
Field BoolField(Member member) {
  return {[member](Config& c, std::string_view v) { std::invoke(member, c) = ParseBool(v); },
          [member](Config& c) { return FormatBool(std::invoke(member, c)); }};
}

const std::vector<std::pair<std::string, Field>>& Fields() {
  static const auto* fields = new std::vector<std::pair<std::string, Field>>{
      {"p_occ", DoubleField([](Config& c) -> double& { return c.p_occ; })},
      {"sigma", DoubleField([](Config& c) -> double& { return c.detector.sigma; })},
      {"detection_threshold",
       DoubleField([](Config& c) -> double& { return c.detector.detection_threshold; })},
      {"nms_radius", IntField([](Config& c) -> int& { return c.detector.nms_radius; })},
      {"border_margin",
       {[](Config& c, std::string_view v) {
          c.detector.border_margin = Trim(v) == "auto" ? -1 : ParseInt(v);
        },
        [](const Config& c) {
          return c.detector.border_margin < 0 ? std::string("auto")
                                               : std::to_string(c.detector.border_margin);
        }}},
      {"d_threshold", DoubleField([](Config& c) -> double& { return c.detector.d_threshold; })},
      {"barrier",
       {[](Config& c, std::string_view v) {
          const std::string s = Trim(v);
          if (s == "frontier") {
            c.detector.barrier = Barrier::kFrontier;
          } else if (s == "unknown") {
            c.detector.barrier = Barrier::kUnknown;
          } else {
            throw ConfigError("barrier must be 'frontier' or 'unknown'");
          }
        },
        [](const Config& c) {
          return std::string(c.detector.barrier == Barrier::kFrontier ? "frontier"
                                                                      : "unknown");
        }}},
      {"radius", DoubleField([](Config& c) -> double& { return c.descriptor.radius; })},
      {"n_bins", IntField([](Config& c) -> int& { return c.descriptor.n_bins; })},
      {"n_orient_bins", IntField([](Config& c) -> int& { return c.descriptor.n_orient_bins; })},
      {"distance_weight",
       DoubleField([](Config& c) -> double& { return c.descriptor.distance_weight; })},
      {"spatial_sigma",
       DoubleField([](Config& c) -> double& { return c.descriptor.spatial_sigma; })},
      {"weighted_mean", BoolField([](Config& c) -> bool& { return c.descriptor.weighted_mean; })},
      {"max_ratio", DoubleField([](Config& c) -> double& { return c.match.max_ratio; })},
      {"singleton_cap", DoubleField([](Config& c) -> double& { return c.match.singleton_cap; })},
      {"mutual", BoolField([](Config& c) -> bool& { return c.match.mutual; })},
      {"inlier_radius", DoubleField([](Config& c) -> double& { return c.match.inlier_radius; })},
      {"ransac_confidence",
       DoubleField([](Config& c) -> double& { return c.match.ransac_confidence; })},
      {"ransac_max_iters", IntField([](Config& c) -> int& { return c.match.ransac_max_iters; })},
      {"min_inliers", IntField([](Config& c) -> int& { return c.match.min_inliers; })},
      {"rng_seed",
       {[](Config& c, std::string_view v) {
          const std::string s = Trim(v);
          std::uint64_t value = 0;
          const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
          if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw ConfigError("rng_seed must be a non-negative integer");
          }
          c.match.rng_seed = value;
        },
        [](const Config& c) { return std::to_string(c.match.rng_seed); }}},
      {"overlap_threshold",
       DoubleField([](Config& c) -> double& { return c.eval.overlap_threshold; })},
      {"pose_tolerance_m",
       DoubleField([](Config& c) -> double& { return c.eval.pose_tolerance_m; })},
      {"pose_tolerance_deg",
       DoubleField([](Config& c) -> double& { return c.eval.pose_tolerance_deg; })},
      {"decision_only", BoolField([](Config& c) -> bool& { return c.eval.decision_only; })},
  };
  return *fields;
}

const Field& Lookup(std::string_view key) {
  for (const auto& [name, field] : Fields()) {
    if (name == key) return field;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

bool ParseBool(std::string_view text) {
  const std::string s = Trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

void Config::Set(std::string_view key, std::string_view value) {
  const Field& field = Lookup(Trim(key));
  field.set(*this, value);
}

std::string Config::Get(std::string_view key) const {
  const Field& field = Lookup(Trim(key));
  return field.get(*const_cast<Config*>(this));
}

const std::vector<std::string>& Config::Keys() {
  static const auto* keys = [] {
    auto* k = new std::vector<std::string>;
    for (const auto& [name, field] : Fields()) k->push_back(name);
    return k;
  }();
  return *keys;
}

void Config::Merge(std::string_view text) {
  std::size_t line_no = 0;
  for (const std::string& raw : SplitList(text, '\n')) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key=value, got '" + line + "'");
    }
    Set(line.substr(0, eq), line.substr(eq + 1));
  }
  Validate();
}

Config Config::Parse(std::string_view text) {
  Config config;
  config.Merge(text);
  return config;
}

Config Config::Load(const std::string& path) { return Parse(ReadFile(path)); }

std::string Config::ToString() const {
  std::string out;
  for (const std::string& key : Keys()) out += key + "=" + Get(key) + "\n";
  return out;
}

void Config::Validate() const {
  try {
    if (!(p_occ > 0.0 && p_occ < 1.0)) throw std::invalid_argument("p_occ must lie in (0, 1)");
    detector.Validate();
    descriptor.Validate();
    match.Validate();
    if (!(eval.overlap_threshold >= 0.0 && eval.overlap_threshold <= 1.0)) {
      throw std::invalid_argument("overlap_threshold must lie in [0, 1]");
    }
    if (!(eval.pose_tolerance_m > 0.0) || !(eval.pose_tolerance_deg > 0.0)) {
      throw std::invalid_argument("pose tolerances must be positive");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

ParamGrid ParamGrid::Parse(std::string_view text) {
  ParamGrid grid;
  for (const std::string& raw : SplitList(text, '\n')) {
    const std::string line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = v1, v2, ...");
    const std::string key = Trim(line.substr(0, eq));
    Lookup(key);
    auto values = SplitList(line.substr(eq + 1), ',');
    if (values.empty()) throw ConfigError("grid axis '" + key + "' has no values");
    grid.axes.emplace_back(key, std::move(values));
  }
  return grid;
}

std::size_t ParamGrid::size() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.second.size();
  return n;
}

std::vector<std::pair<std::string, std::string>> ParamGrid::Cell(std::size_t index) const {
  std::vector<std::pair<std::string, std::string>> cell(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const auto& values = axes[k].second;
    cell[k] = {axes[k].first, values[index % values.size()]};
    index /= values.size();
  }
  return cell;
}

}  // namespace locus
