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

#include "test_util.h"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>

namespace locus {
namespace testing {

GridGeometry Geometry(int width, int height, double resolution, Pose2 origin) {
  GridGeometry g;
  g.width = width;
  g.height = height;
  g.resolution = resolution;
  g.origin = origin;
  return g;
}

TernaryGrid MakeTernary(const GridGeometry& geometry, std::vector<CellState> cells) {
  return TernaryGrid(geometry, std::move(cells));
}

TernaryGrid GridFromText(const std::vector<std::string>& rows, double resolution) {
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.at(0).size());
  std::vector<CellState> cells(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    const std::string& line = rows[height - 1 - r];
    if (static_cast<int>(line.size()) != width) throw std::invalid_argument("ragged rows");
    for (int c = 0; c < width; ++c) {
      CellState s;
      switch (line[c]) {
        case '#': s = CellState::kOccupied; break;
        case '.': s = CellState::kFree; break;
        case '?': s = CellState::kUnknown; break;
        default: throw std::invalid_argument("bad cell character");
      }
      cells[static_cast<std::size_t>(r) * width + c] = s;
    }
  }
  return TernaryGrid(Geometry(width, height, resolution), std::move(cells));
}

TernaryGrid RandomTernary(Rng& rng, int width, int height, double p_occ, double p_unknown) {
  std::vector<CellState> cells(static_cast<std::size_t>(width) * height);
  for (CellState& s : cells) {
    if (rng.Uniform() < p_unknown) {
      s = CellState::kUnknown;
    } else {
      s = rng.Uniform() < p_occ ? CellState::kOccupied : CellState::kFree;
    }
  }
  return TernaryGrid(Geometry(width, height), std::move(cells));
}

TernaryGrid SquareRoom(int interior, double resolution, int padding) {
  const int n = interior + 2 + 2 * padding;
  std::vector<CellState> cells(static_cast<std::size_t>(n) * n, CellState::kFree);
  const int lo = padding, hi = n - 1 - padding;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const bool on_ring = (c == lo || c == hi) && r >= lo && r <= hi;
      const bool on_cap = (r == lo || r == hi) && c >= lo && c <= hi;
      if (on_ring || on_cap) cells[static_cast<std::size_t>(r) * n + c] = CellState::kOccupied;
    }
  }
  const double half = 0.5 * (n - 1) * resolution;
  return TernaryGrid(Geometry(n, n, resolution, Pose2(-half, -half, 0.0)), std::move(cells));
}

OccupancyGrid ToOccupancy(const TernaryGrid& grid) {
  std::vector<float> cells;
  cells.reserve(grid.cells().size());
  for (CellState s : grid.cells()) {
    cells.push_back(s == CellState::kUnknown    ? kUnknownProbability
                    : s == CellState::kOccupied ? 0.9f
                                                : 0.1f);
  }
  return OccupancyGrid(grid.geometry(), std::move(cells));
}

TernaryGrid Shift(const TernaryGrid& grid, int dcol, int drow, CellState fill) {
  const GridGeometry& g = grid.geometry();
  std::vector<CellState> cells(g.size(), fill);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const int nc = c + dcol, nr = r + drow;
      if (g.Contains(nc, nr)) cells[g.Index(nc, nr)] = grid.at(c, r);
    }
  }
  return TernaryGrid(g, std::move(cells));
}

EikonalStats CheckEikonal(const TernaryGrid& grid, const SdfGrid& sdf) {
  const GridGeometry& g = grid.geometry();
  std::vector<CellIndex> surface;
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (grid.at(c, r) != CellState::kFree) surface.push_back({c, r});
    }
  }
  // Exhaustive nearest non-free cell, which doubles as the clearance check.
  std::vector<double> clearance(g.size(), std::numeric_limits<double>::infinity());
  std::vector<double> direction(g.size(), 0.0);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (grid.at(c, r) != CellState::kFree) continue;
      const std::size_t i = g.Index(c, r);
      for (const CellIndex& s : surface) {
        const double dx = s.col - c, dy = s.row - r;
        const double d = std::hypot(dx, dy);
        if (d < clearance[i]) {
          clearance[i] = d;
          direction[i] = std::atan2(dy, dx);
        }
      }
    }
  }
  std::vector<std::uint8_t> skeleton(g.size(), 0);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const std::size_t i = g.Index(c, r);
      if (grid.at(c, r) != CellState::kFree) continue;
      for (int dr = -1; dr <= 1 && !skeleton[i]; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nc = c + dc, nr = r + dr;
          if (!g.Contains(nc, nr) || grid.at(nc, nr) != CellState::kFree) continue;
          const double diff =
              std::abs(std::remainder(direction[g.Index(nc, nr)] - direction[i], 2 * kPi));
          if (diff > kPi / 2) {
            skeleton[i] = 1;
            break;
          }
        }
      }
    }
  }
  std::vector<std::uint8_t> is_skeleton(skeleton.begin(), skeleton.end());
  const std::vector<double> skeleton_d2 =
      SquaredDistanceTransform(g.width, g.height, is_skeleton);

  EikonalStats stats;
  for (int r = 1; r + 1 < g.height; ++r) {
    for (int c = 1; c + 1 < g.width; ++c) {
      const std::size_t i = g.Index(c, r);
      if (grid.at(c, r) != CellState::kFree || !sdf.valid[i]) continue;
      if (clearance[i] <= 2.0 || skeleton_d2[i] <= 4.0) continue;
      const double gx = (sdf.at(c + 1, r) - sdf.at(c - 1, r)) / (2 * g.resolution);
      const double gy = (sdf.at(c, r + 1) - sdf.at(c, r - 1)) / (2 * g.resolution);
      const double m = std::hypot(gx, gy);
      ++stats.qualifying;
      if (m >= 0.8 && m <= 1.2) ++stats.within;
    }
  }
  return stats;
}

std::string TempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("locus_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove_all(path);
  return path.string();
}

const SyntheticDataset& SmallBenchmark() {
  static const SyntheticDataset* dataset = [] {
    WorldSpec spec;
    spec.seed = 7;
    BenchmarkPlan plan;
    plan.matching_pairs = 6;
    plan.disjoint_pairs = 6;
    return new SyntheticDataset(GenerateBenchmark(spec, plan));
  }();
  return *dataset;
}

}  // namespace testing
}  // namespace locus
