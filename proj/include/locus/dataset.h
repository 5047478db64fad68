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

#ifndef LOCUS_DATASET_H_
#define LOCUS_DATASET_H_

#include <string>
#include <utility>
#include <vector>

#include "locus/grid.h"

namespace locus {

// Directory layout:
//   poses.txt   one "id tx ty theta" line per submap (global frame)
//   <id>.grid   occupancy container of each submap
//   pairs.txt   optional "id_a id_b" lines naming the pairs to evaluate
struct Dataset {
  std::vector<Submap> submaps;
  std::vector<std::pair<int, int>> pairs;  // indices into submaps
};

void SaveDataset(const Dataset& dataset, const std::string& directory);

// Poses in poses.txt take precedence over the ones stored in the grid files.
Dataset LoadDataset(const std::string& directory);

}  // namespace locus

#endif  // LOCUS_DATASET_H_
