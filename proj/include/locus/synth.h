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

#ifndef LOCUS_SYNTH_H_
#define LOCUS_SYNTH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locus/dataset.h"
#include "locus/grid.h"

namespace locus {

struct WorldSpec {
  std::uint64_t seed = 1;
  double extent_x = 50.0;  // meters
  double extent_y = 50.0;
  double resolution = 0.05;
  int room_count_min = 6;
  int room_count_max = 10;
  double room_size_min = 8.0;  // side length, meters
  double room_size_max = 16.0;
  double wall_thickness = 0.5;  // minimum solid gap between rooms
  bool connect_rooms = true;
  double corridor_width_min = 1.2;
  double corridor_width_max = 2.0;
  double clutter_density = 0.05;  // obstacles per m^2 of room floor
  double clutter_size_min = 0.3;  // meters
  double clutter_size_max = 1.2;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  Vec2 center() const { return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)}; }
};

// World cell (col, row) is centered at (col * resolution, row * resolution).
// Everything outside the raster counts as occupied.
struct WorldRaster {
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  std::vector<std::uint8_t> occupied;
  std::vector<Rect> rooms;

  bool IsOccupied(int col, int row) const {
    if (col < 0 || row < 0 || col >= width || row >= height) return true;
    return occupied[static_cast<std::size_t>(row) * width + col] != 0;
  }
  Vec2 CellCenter(int col, int row) const { return {col * resolution, row * resolution}; }
  CellIndex NearestCell(Vec2 p) const;
};

// Deterministic per seed. Throws GenerationError if fewer than
// room_count_min rooms fit.
WorldRaster GenerateWorld(const WorldSpec& spec);

// True if the segment from viewpoint to the center of the target world cell
// crosses no occupied cell before reaching the target. Grid traversal in
// cell units; a point on a cell boundary belongs to the cell with the larger
// index, and a ray through a cell corner also visits the corner's cell.
bool SegmentVisible(const WorldRaster& world, Vec2 viewpoint, CellIndex target);

// Same traversal; returns the first occupied cell before the target, or
// nullopt if the target is reached.
std::optional<CellIndex> FirstBlocker(const WorldRaster& world, Vec2 viewpoint,
                                      CellIndex target);

struct Window {
  Vec2 center;     // world meters
  double width = 8.0;   // meters
  double height = 8.0;
};

inline constexpr float kObservedOccupied = 0.9f;
inline constexpr float kObservedFree = 0.1f;

// Observes every window cell that some viewpoint sees within sensor_range,
// plus every occupied cell within range that stops a ray cast toward a
// window cell outside solid obstacle interiors (a beam return). The window
// snaps to world cells; the submap frame is axis aligned at the window
// center. Throws GenerationError for a viewpoint inside an obstacle.
Submap CarveSubmap(const WorldRaster& world, std::span<const Vec2> viewpoints,
                   double sensor_range, const Window& window, std::string id);

struct BenchmarkPlan {
  int matching_pairs = 100;
  int disjoint_pairs = 100;
  double window = 14.0;  // square side, meters
  double sensor_range = 10.0;
  int viewpoints = 10;
  // Viewpoints are drawn within this radius of the pair's anchor point.
  double viewpoint_spread = 4.0;
  double viewpoint_clearance = 0.4;
  // Each window of a matching pair is offset from the anchor by up to this
  // much per axis.
  double max_offset = 1.0;
  double min_match_overlap = 0.5;
  int max_attempts = 20000;

  void Validate() const;
};

struct SyntheticDataset {
  WorldSpec spec;
  BenchmarkPlan plan;
  WorldRaster world;
  Dataset dataset;
  std::vector<std::vector<Vec2>> viewpoints;  // per submap, world frame
  std::vector<bool> planned_match;            // per pair
};

// Pairs (2k, 2k + 1) are the planned pairs: matching pairs first, then
// disjoint ones. Throws GenerationError when the plan cannot be met.
SyntheticDataset GenerateBenchmark(const WorldSpec& spec, const BenchmarkPlan& plan);

struct SynthSpec {
  WorldSpec world;
  BenchmarkPlan plan;
};

// key=value text over the fields of WorldSpec and BenchmarkPlan.
SynthSpec ParseSynthSpec(std::string_view text);

}  // namespace locus

#endif  // LOCUS_SYNTH_H_
