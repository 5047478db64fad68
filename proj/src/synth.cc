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

#include "locus/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "locus/config.h"
#include "locus/errors.h"
#include "locus/eval.h"
#include "locus/random.h"
#include "locus/sdf.h"

namespace locus {
namespace {

void SetCells(WorldRaster& world, const Rect& rect, std::uint8_t value) {
  const double res = world.resolution;
  // The outermost ring stays solid so the world is closed.
  const int c_lo = std::max(1, static_cast<int>(std::ceil(rect.min_x / res)));
  const int c_hi = std::min(world.width - 2, static_cast<int>(std::floor(rect.max_x / res)));
  const int r_lo = std::max(1, static_cast<int>(std::ceil(rect.min_y / res)));
  const int r_hi = std::min(world.height - 2, static_cast<int>(std::floor(rect.max_y / res)));
  for (int r = r_lo; r <= r_hi; ++r) {
    for (int c = c_lo; c <= c_hi; ++c) {
      world.occupied[static_cast<std::size_t>(r) * world.width + c] = value;
    }
  }
}

bool Intersects(const Rect& a, const Rect& b, double gap) {
  return a.min_x < b.max_x + gap && b.min_x < a.max_x + gap && a.min_y < b.max_y + gap &&
         b.min_y < a.max_y + gap;
}

void CarveCorridor(WorldRaster& world, Vec2 from, Vec2 to, double half_width,
                   bool horizontal_first) {
  const Vec2 corner = horizontal_first ? Vec2{to.x, from.y} : Vec2{from.x, to.y};
  for (const auto& [p, q] : {std::pair{from, corner}, std::pair{corner, to}}) {
    SetCells(world,
             {std::min(p.x, q.x) - half_width, std::min(p.y, q.y) - half_width,
              std::max(p.x, q.x) + half_width, std::max(p.y, q.y) + half_width},
             0);
  }
}

// Convex obstacle: an oriented rectangle or a disc.
void PlaceClutter(WorldRaster& world, const Rect& room, const WorldSpec& spec, Rng& rng) {
  const double size = rng.Uniform(spec.clutter_size_min, spec.clutter_size_max);
  const double margin = 0.8 + 0.5 * size;
  if (room.max_x - room.min_x <= 2.0 * margin || room.max_y - room.min_y <= 2.0 * margin) {
    return;
  }
  const Vec2 center{rng.Uniform(room.min_x + margin, room.max_x - margin),
                    rng.Uniform(room.min_y + margin, room.max_y - margin)};
  const bool disc = rng.Uniform() < 0.4;
  const double half_a = 0.5 * size;
  const double half_b = 0.5 * size * rng.Uniform(0.3, 1.0);
  const double angle = rng.Uniform(0.0, kPi);
  const double c = std::cos(angle), s = std::sin(angle);
  const double reach = std::hypot(half_a, half_b);
  const double res = world.resolution;
  const int c_lo = std::max(1, static_cast<int>(std::floor((center.x - reach) / res)));
  const int c_hi =
      std::min(world.width - 2, static_cast<int>(std::ceil((center.x + reach) / res)));
  const int r_lo = std::max(1, static_cast<int>(std::floor((center.y - reach) / res)));
  const int r_hi =
      std::min(world.height - 2, static_cast<int>(std::ceil((center.y + reach) / res)));
  for (int r = r_lo; r <= r_hi; ++r) {
    for (int col = c_lo; col <= c_hi; ++col) {
      const Vec2 d = world.CellCenter(col, r) - center;
      bool inside;
      if (disc) {
        inside = Norm(d) <= half_a;
      } else {
        const double lx = c * d.x + s * d.y;
        const double ly = -s * d.x + c * d.y;
        inside = std::abs(lx) <= half_a && std::abs(ly) <= half_b;
      }
      if (inside) world.occupied[static_cast<std::size_t>(r) * world.width + col] = 1;
    }
  }
}

// Occupied with all eight neighbours occupied; no ray can reach it.
bool IsInterior(const WorldRaster& world, int col, int row) {
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (!world.IsOccupied(col + dc, row + dr)) return false;
    }
  }
  return true;
}

// Visit results for the traversal.
enum class Step { kContinue, kReached, kBlocked };

}  // namespace

void WorldSpec::Validate() const {
  if (!(extent_x > 0.0) || !(extent_y > 0.0) || !(resolution > 0.0)) {
    throw std::invalid_argument("world extent and resolution must be positive");
  }
  if (room_count_min < 1 || room_count_max < room_count_min) {
    throw std::invalid_argument("room_count range is empty");
  }
  if (!(room_size_min > 0.0) || room_size_max < room_size_min) {
    throw std::invalid_argument("room_size range is empty");
  }
  if (!(corridor_width_min > 0.0) || corridor_width_max < corridor_width_min) {
    throw std::invalid_argument("corridor_width range is empty");
  }
  if (!(clutter_density >= 0.0) || !(clutter_size_min > 0.0) ||
      clutter_size_max < clutter_size_min) {
    throw std::invalid_argument("clutter parameters are invalid");
  }
  if (!(wall_thickness >= 0.0)) throw std::invalid_argument("wall_thickness is negative");
}

CellIndex WorldRaster::NearestCell(Vec2 p) const {
  return {static_cast<int>(std::floor(p.x / resolution + 0.5)),
          static_cast<int>(std::floor(p.y / resolution + 0.5))};
}

WorldRaster GenerateWorld(const WorldSpec& spec) {
  spec.Validate();
  WorldRaster world;
  world.resolution = spec.resolution;
  world.width = static_cast<int>(std::lround(spec.extent_x / spec.resolution)) + 1;
  world.height = static_cast<int>(std::lround(spec.extent_y / spec.resolution)) + 1;
  world.occupied.assign(static_cast<std::size_t>(world.width) * world.height, 1);

  Rng rng(spec.seed);
  const int target = rng.IntInRange(spec.room_count_min, spec.room_count_max);
  const double border = std::max(spec.wall_thickness, 2.0 * spec.resolution);
  const int max_attempts = 200 * target;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(world.rooms.size()) < target;
       ++attempt) {
    const double w = rng.Uniform(spec.room_size_min, spec.room_size_max);
    const double h = rng.Uniform(spec.room_size_min, spec.room_size_max);
    const double free_x = spec.extent_x - 2.0 * border - w;
    const double free_y = spec.extent_y - 2.0 * border - h;
    if (free_x < 0.0 || free_y < 0.0) continue;
    const double x = border + rng.Uniform() * free_x;
    const double y = border + rng.Uniform() * free_y;
    const Rect room{x, y, x + w, y + h};
    const bool clear = std::none_of(world.rooms.begin(), world.rooms.end(), [&](const Rect& r) {
      return Intersects(room, r, spec.wall_thickness);
    });
    if (clear) world.rooms.push_back(room);
  }
  if (static_cast<int>(world.rooms.size()) < spec.room_count_min) {
    throw GenerationError("only " + std::to_string(world.rooms.size()) + " of " +
                          std::to_string(spec.room_count_min) + " rooms fit in the world");
  }
  for (const Rect& room : world.rooms) SetCells(world, room, 0);

  if (spec.connect_rooms) {
    for (std::size_t i = 1; i < world.rooms.size(); ++i) {
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < i; ++j) {
        const double d = Norm(world.rooms[i].center() - world.rooms[j].center());
        if (d < best) {
          best = d;
          nearest = j;
        }
      }
      const double half_width =
          0.5 * rng.Uniform(spec.corridor_width_min, spec.corridor_width_max);
      const bool horizontal_first = rng.Uniform() < 0.5;
      CarveCorridor(world, world.rooms[i].center(), world.rooms[nearest].center(), half_width,
                    horizontal_first);
    }
  }

  for (const Rect& room : world.rooms) {
    const double area = (room.max_x - room.min_x) * (room.max_y - room.min_y);
    const int count = static_cast<int>(std::floor(spec.clutter_density * area + rng.Uniform()));
    for (int k = 0; k < count; ++k) PlaceClutter(world, room, spec, rng);
  }
  return world;
}

bool SegmentVisible(const WorldRaster& world, Vec2 viewpoint, CellIndex target) {
  return !FirstBlocker(world, viewpoint, target).has_value();
}

std::optional<CellIndex> FirstBlocker(const WorldRaster& world, Vec2 viewpoint,
                                      CellIndex target) {
  const double px = viewpoint.x / world.resolution;
  const double py = viewpoint.y / world.resolution;
  int cx = static_cast<int>(std::floor(px + 0.5));
  int cy = static_cast<int>(std::floor(py + 0.5));
  if (cx == target.col && cy == target.row) return std::nullopt;
  const double dx = target.col - px;
  const double dy = target.row - py;
  const int sx = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int sy = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double t_max_x = sx > 0 ? (cx + 0.5 - px) / dx : (sx < 0 ? (cx - 0.5 - px) / dx : kInf);
  double t_max_y = sy > 0 ? (cy + 0.5 - py) / dy : (sy < 0 ? (cy - 0.5 - py) / dy : kInf);
  const double t_delta_x = sx != 0 ? 1.0 / std::abs(dx) : kInf;
  const double t_delta_y = sy != 0 ? 1.0 / std::abs(dy) : kInf;

  CellIndex blocker;
  const auto visit = [&](int x, int y) {
    if (x == target.col && y == target.row) return Step::kReached;
    if (!world.IsOccupied(x, y)) return Step::kContinue;
    blocker = {x, y};
    return Step::kBlocked;
  };
  const auto finish = [&](Step result) -> std::optional<CellIndex> {
    if (result == Step::kReached) return std::nullopt;
    return blocker;
  };
  const int max_steps = std::abs(target.col - cx) + std::abs(target.row - cy) + 4;
  for (int step = 0; step < max_steps; ++step) {
    Step result;
    if (t_max_x < t_max_y) {
      cx += sx;
      t_max_x += t_delta_x;
      result = visit(cx, cy);
    } else if (t_max_y < t_max_x) {
      cy += sy;
      t_max_y += t_delta_y;
      result = visit(cx, cy);
    } else {
      // Through a corner: the corner point belongs to the cell with the
      // larger indices, which is a third cell when the steps differ in sign.
      if (sx > 0 && sy < 0) {
        result = visit(cx + 1, cy);
        if (result != Step::kContinue) return finish(result);
      } else if (sx < 0 && sy > 0) {
        result = visit(cx, cy + 1);
        if (result != Step::kContinue) return finish(result);
      }
      cx += sx;
      cy += sy;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
      result = visit(cx, cy);
    }
    if (result != Step::kContinue) return finish(result);
  }
  // Unreachable for finite input; report the start cell as blocking.
  return CellIndex{cx, cy};
}

Submap CarveSubmap(const WorldRaster& world, std::span<const Vec2> viewpoints,
                   double sensor_range, const Window& window, std::string id) {
  if (!(window.width > 0.0) || !(window.height > 0.0) || !(sensor_range > 0.0)) {
    throw std::invalid_argument("window and sensor range must be positive");
  }
  for (const Vec2& v : viewpoints) {
    const CellIndex cell = world.NearestCell(v);
    if (world.IsOccupied(cell.col, cell.row)) {
      throw GenerationError("viewpoint inside an obstacle");
    }
  }
  const double res = world.resolution;
  const int w = std::max(1, static_cast<int>(std::lround(window.width / res)));
  const int h = std::max(1, static_cast<int>(std::lround(window.height / res)));
  const double half_w = 0.5 * (w - 1);
  const double half_h = 0.5 * (h - 1);
  const int c0 = static_cast<int>(std::lround(window.center.x / res - half_w));
  const int r0 = static_cast<int>(std::lround(window.center.y / res - half_h));

  std::vector<float> cells(static_cast<std::size_t>(w) * h, kUnknownProbability);
  const auto mark = [&](int col, int row) {
    const int i = col - c0;
    const int j = row - r0;
    if (i < 0 || j < 0 || i >= w || j >= h) return;
    cells[static_cast<std::size_t>(j) * w + i] =
        world.IsOccupied(col, row) ? kObservedOccupied : kObservedFree;
  };
  const double range_sq = sensor_range * sensor_range;
  const auto in_range = [&](Vec2 v, int col, int row) {
    const Vec2 d = world.CellCenter(col, row) - v;
    return d.x * d.x + d.y * d.y <= range_sq;
  };
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int col = c0 + i;
      const int row = r0 + j;
      if (col < 0 || row < 0 || col >= world.width || row >= world.height) continue;
      if (IsInterior(world, col, row)) continue;
      for (const Vec2& v : viewpoints) {
        if (!in_range(v, col, row)) continue;
        const std::optional<CellIndex> blocker = FirstBlocker(world, v, {col, row});
        if (!blocker) {
          mark(col, row);
          break;
        }
        if (in_range(v, blocker->col, blocker->row)) mark(blocker->col, blocker->row);
      }
    }
  }
  GridGeometry geometry;
  geometry.width = w;
  geometry.height = h;
  geometry.resolution = res;
  geometry.origin = Pose2(-half_w * res, -half_h * res, 0.0);
  Submap submap;
  submap.id = std::move(id);
  submap.pose = Pose2((c0 + half_w) * res, (r0 + half_h) * res, 0.0);
  submap.grid = OccupancyGrid(geometry, std::move(cells));
  return submap;
}

void BenchmarkPlan::Validate() const {
  if (matching_pairs < 0 || disjoint_pairs < 0 || matching_pairs + disjoint_pairs == 0) {
    throw std::invalid_argument("benchmark plan has no pairs");
  }
  if (!(window > 0.0) || !(sensor_range > 0.0) || viewpoints < 1 ||
      !(viewpoint_spread >= 0.0) || !(viewpoint_clearance >= 0.0) || !(max_offset >= 0.0) ||
      max_attempts < 1) {
    throw std::invalid_argument("benchmark plan parameters are invalid");
  }
  if (!(min_match_overlap >= 0.0 && min_match_overlap <= 1.0)) {
    throw std::invalid_argument("min_match_overlap must lie in [0, 1]");
  }
}

namespace {

class BenchmarkBuilder {
 public:
  BenchmarkBuilder(const WorldSpec& spec, const BenchmarkPlan& plan)
      : plan_(plan), world_(GenerateWorld(spec)), rng_(DeriveSeed(spec.seed, 1)) {
    std::vector<std::uint8_t> features(world_.occupied.begin(), world_.occupied.end());
    clearance_sq_ = SquaredDistanceTransform(world_.width, world_.height, features);
  }

  WorldRaster& world() { return world_; }

  double Clearance(Vec2 p) const {
    const CellIndex c = world_.NearestCell(p);
    if (world_.IsOccupied(c.col, c.row)) return 0.0;
    return std::sqrt(clearance_sq_[static_cast<std::size_t>(c.row) * world_.width + c.col]) *
           world_.resolution;
  }

  // Free point whose surrounding window (plus slack) fits in the world.
  Vec2 SampleAnchor(double slack) {
    const double lo = 0.5 * plan_.window + slack;
    const double hi_x = (world_.width - 1) * world_.resolution - lo;
    const double hi_y = (world_.height - 1) * world_.resolution - lo;
    if (hi_x <= lo || hi_y <= lo) throw GenerationError("window does not fit in the world");
    for (int attempt = 0; attempt < plan_.max_attempts; ++attempt) {
      const Vec2 p{rng_.Uniform(lo, hi_x), rng_.Uniform(lo, hi_y)};
      if (Clearance(p) >= std::max(plan_.viewpoint_clearance, 0.5)) return p;
    }
    throw GenerationError("no free anchor point found");
  }

  std::vector<Vec2> SampleViewpoints(Vec2 anchor) {
    const CellIndex anchor_cell = world_.NearestCell(anchor);
    std::vector<Vec2> viewpoints = {anchor};
    for (int attempt = 0;
         attempt < 200 && static_cast<int>(viewpoints.size()) < plan_.viewpoints; ++attempt) {
      const double r = plan_.viewpoint_spread * std::sqrt(rng_.Uniform());
      const double a = rng_.Uniform(-kPi, kPi);
      const Vec2 p = anchor + Vec2{r * std::cos(a), r * std::sin(a)};
      if (Clearance(p) < plan_.viewpoint_clearance) continue;
      if (!SegmentVisible(world_, p, anchor_cell)) continue;
      viewpoints.push_back(p);
    }
    return viewpoints;
  }

  Submap Carve(Vec2 center, const std::vector<Vec2>& viewpoints, int index) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%04d", index);
    return CarveSubmap(world_, viewpoints, plan_.sensor_range,
                       {center, plan_.window, plan_.window}, id);
  }

  Vec2 Jitter(Vec2 anchor) {
    return anchor + Vec2{rng_.Uniform(-plan_.max_offset, plan_.max_offset),
                         rng_.Uniform(-plan_.max_offset, plan_.max_offset)};
  }

  Rng& rng() { return rng_; }

 private:
  BenchmarkPlan plan_;
  WorldRaster world_;
  Rng rng_;
  std::vector<double> clearance_sq_;
};

}  // namespace

SyntheticDataset GenerateBenchmark(const WorldSpec& spec, const BenchmarkPlan& plan) {
  plan.Validate();
  BenchmarkBuilder builder(spec, plan);
  SyntheticDataset out;
  out.spec = spec;
  out.plan = plan;
  auto add = [&](Submap submap, std::vector<Vec2> viewpoints) {
    out.dataset.submaps.push_back(std::move(submap));
    out.viewpoints.push_back(std::move(viewpoints));
  };

  int attempts = 0;
  for (int k = 0; k < plan.matching_pairs; ++k) {
    while (true) {
      if (++attempts > plan.max_attempts) {
        throw GenerationError("could not realize the planned matching pairs");
      }
      const Vec2 anchor = builder.SampleAnchor(plan.max_offset);
      const int index = static_cast<int>(out.dataset.submaps.size());
      auto views_a = builder.SampleViewpoints(anchor);
      auto views_b = builder.SampleViewpoints(anchor);
      Submap a = builder.Carve(builder.Jitter(anchor), views_a, index);
      Submap b = builder.Carve(builder.Jitter(anchor), views_b, index + 1);
      if (OverlapRatio(a, b) < plan.min_match_overlap) continue;
      add(std::move(a), std::move(views_a));
      add(std::move(b), std::move(views_b));
      out.dataset.pairs.emplace_back(index, index + 1);
      out.planned_match.push_back(true);
      break;
    }
  }
  const double separation = plan.window + 1.0;
  for (int k = 0; k < plan.disjoint_pairs; ++k) {
    while (true) {
      if (++attempts > plan.max_attempts) {
        throw GenerationError("could not realize the planned disjoint pairs");
      }
      const Vec2 anchor_a = builder.SampleAnchor(0.0);
      const Vec2 anchor_b = builder.SampleAnchor(0.0);
      if (std::abs(anchor_a.x - anchor_b.x) < separation &&
          std::abs(anchor_a.y - anchor_b.y) < separation) {
        continue;
      }
      const int index = static_cast<int>(out.dataset.submaps.size());
      auto views_a = builder.SampleViewpoints(anchor_a);
      auto views_b = builder.SampleViewpoints(anchor_b);
      Submap a = builder.Carve(anchor_a, views_a, index);
      Submap b = builder.Carve(anchor_b, views_b, index + 1);
      add(std::move(a), std::move(views_a));
      add(std::move(b), std::move(views_b));
      out.dataset.pairs.emplace_back(index, index + 1);
      out.planned_match.push_back(false);
      break;
    }
  }
  out.world = std::move(builder.world());
  return out;
}

SynthSpec ParseSynthSpec(std::string_view text) {
  using Setter = std::function<void(SynthSpec&, std::string_view)>;
  const auto d = [](auto member) -> Setter {
    return [member](SynthSpec& s, std::string_view v) { member(s) = ParseDouble(v); };
  };
  const auto i = [](auto member) -> Setter {
    return [member](SynthSpec& s, std::string_view v) {
      const double x = ParseDouble(v);
      if (x != std::floor(x) || std::abs(x) > 1e9) {
        throw ConfigError("not an integer: '" + std::string(v) + "'");
      }
      member(s) = static_cast<int>(x);
    };
  };
  const std::map<std::string, Setter> setters = {
      {"seed",
       [](SynthSpec& s, std::string_view v) {
         const double x = ParseDouble(v);
         if (x < 0 || x != std::floor(x)) throw ConfigError("seed must be a non-negative integer");
         s.world.seed = std::stoull(Trim(v));
       }},
      {"extent_x", d([](SynthSpec& s) -> double& { return s.world.extent_x; })},
      {"extent_y", d([](SynthSpec& s) -> double& { return s.world.extent_y; })},
      {"resolution", d([](SynthSpec& s) -> double& { return s.world.resolution; })},
      {"room_count_min", i([](SynthSpec& s) -> int& { return s.world.room_count_min; })},
      {"room_count_max", i([](SynthSpec& s) -> int& { return s.world.room_count_max; })},
      {"room_size_min", d([](SynthSpec& s) -> double& { return s.world.room_size_min; })},
      {"room_size_max", d([](SynthSpec& s) -> double& { return s.world.room_size_max; })},
      {"wall_thickness", d([](SynthSpec& s) -> double& { return s.world.wall_thickness; })},
      {"connect_rooms",
       [](SynthSpec& s, std::string_view v) { s.world.connect_rooms = ParseBool(v); }},
      {"corridor_width_min",
       d([](SynthSpec& s) -> double& { return s.world.corridor_width_min; })},
      {"corridor_width_max",
       d([](SynthSpec& s) -> double& { return s.world.corridor_width_max; })},
      {"clutter_density", d([](SynthSpec& s) -> double& { return s.world.clutter_density; })},
      {"clutter_size_min", d([](SynthSpec& s) -> double& { return s.world.clutter_size_min; })},
      {"clutter_size_max", d([](SynthSpec& s) -> double& { return s.world.clutter_size_max; })},
      {"matching_pairs", i([](SynthSpec& s) -> int& { return s.plan.matching_pairs; })},
      {"disjoint_pairs", i([](SynthSpec& s) -> int& { return s.plan.disjoint_pairs; })},
      {"window", d([](SynthSpec& s) -> double& { return s.plan.window; })},
      {"sensor_range", d([](SynthSpec& s) -> double& { return s.plan.sensor_range; })},
      {"viewpoints", i([](SynthSpec& s) -> int& { return s.plan.viewpoints; })},
      {"viewpoint_spread", d([](SynthSpec& s) -> double& { return s.plan.viewpoint_spread; })},
      {"viewpoint_clearance",
       d([](SynthSpec& s) -> double& { return s.plan.viewpoint_clearance; })},
      {"max_offset", d([](SynthSpec& s) -> double& { return s.plan.max_offset; })},
      {"min_match_overlap", d([](SynthSpec& s) -> double& { return s.plan.min_match_overlap; })},
      {"max_attempts", i([](SynthSpec& s) -> int& { return s.plan.max_attempts; })},
  };
  SynthSpec spec;
  for (const std::string& raw : SplitList(text, '\n')) {
    const std::string line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'");
    const std::string key = Trim(line.substr(0, eq));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown synth key '" + key + "'");
    it->second(spec, line.substr(eq + 1));
  }
  try {
    spec.world.Validate();
    spec.plan.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid synth spec: ") + e.what());
  }
  return spec;
}

}  // namespace locus
