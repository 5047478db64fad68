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

#include "locus/dataset.h"

#include <filesystem>
#include <map>
#include <sstream>

#include "locus/errors.h"
#include "locus/grid_io.h"

namespace locus {
namespace {

namespace fs = std::filesystem;

void CheckId(const std::string& id) {
  if (id.empty() || id.find_first_of(" \t\r\n/\\") != std::string::npos) {
    throw IoError("submap id '" + id + "' cannot be used as a file name");
  }
}

}  // namespace

void SaveDataset(const Dataset& dataset, const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create " + directory + ": " + ec.message());
  std::string poses;
  for (const Submap& submap : dataset.submaps) {
    CheckId(submap.id);
    SaveGrid(submap, (fs::path(directory) / (submap.id + ".grid")).string());
    poses += submap.id + " " + FormatDouble(submap.pose.x()) + " " +
             FormatDouble(submap.pose.y()) + " " + FormatDouble(submap.pose.theta()) + "\n";
  }
  WriteFile((fs::path(directory) / "poses.txt").string(), poses);
  std::string pairs;
  for (const auto& [a, b] : dataset.pairs) {
    pairs += dataset.submaps.at(a).id + " " + dataset.submaps.at(b).id + "\n";
  }
  WriteFile((fs::path(directory) / "pairs.txt").string(), pairs);
}

Dataset LoadDataset(const std::string& directory) {
  Dataset dataset;
  std::map<std::string, int> index_of;
  const std::string poses_text = ReadFile((fs::path(directory) / "poses.txt").string());
  std::istringstream poses(poses_text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(poses, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id;
    double x, y, theta;
    std::string extra;
    if (!(fields >> id >> x >> y >> theta) || (fields >> extra)) {
      throw ParseError(ParseError::Kind::kMalformedRecord, line_offset,
                       "poses.txt line must be 'id tx ty theta'");
    }
    CheckId(id);
    if (index_of.count(id) != 0) {
      throw ParseError(ParseError::Kind::kMalformedRecord, line_offset,
                       "duplicate submap id '" + id + "'");
    }
    Submap submap = LoadGrid((fs::path(directory) / (id + ".grid")).string());
    submap.id = id;
    submap.pose = Pose2(x, y, theta);
    index_of[id] = static_cast<int>(dataset.submaps.size());
    dataset.submaps.push_back(std::move(submap));
  }
  const fs::path pairs_path = fs::path(directory) / "pairs.txt";
  if (fs::exists(pairs_path)) {
    std::istringstream pairs(ReadFile(pairs_path.string()));
    offset = 0;
    while (std::getline(pairs, line)) {
      const std::size_t line_offset = offset;
      offset += line.size() + 1;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string a, b, extra;
      if (!(fields >> a >> b) || (fields >> extra)) {
        throw ParseError(ParseError::Kind::kMalformedRecord, line_offset,
                         "pairs.txt line must be 'id_a id_b'");
      }
      if (index_of.count(a) == 0 || index_of.count(b) == 0) {
        throw ParseError(ParseError::Kind::kMalformedRecord, line_offset,
                         "pairs.txt names an unknown submap");
      }
      dataset.pairs.emplace_back(index_of[a], index_of[b]);
    }
  }
  return dataset;
}

}  // namespace locus
