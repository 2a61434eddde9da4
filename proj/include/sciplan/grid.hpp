// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Grid geometry shared by the belief, the simulator and the planners:
// the coarse location (L) grid, the fine rock grid, robot poses and sensor
// footprints.
//
// Coordinates: x grows east, y grows south. Headings are numbered
// clockwise from east in 45 degree steps, so a positive rotation is
// clockwise (east + 90 = south).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sciplan/errors.hpp"

namespace sciplan {

struct LCell {
  int x = 0;
  int y = 0;
  friend bool operator==(const LCell&, const LCell&) = default;
};

struct RockCell {
  int x = 0;
  int y = 0;
  friend bool operator==(const RockCell&, const RockCell&) = default;
};

// L grid of width x height cells; each L cell covers scale x scale rock cells.
struct GridGeometry {
  int l_width = 0;
  int l_height = 0;
  int scale = 1;

  int rock_width() const { return l_width * scale; }
  int rock_height() const { return l_height * scale; }
  std::size_t l_cells() const { return static_cast<std::size_t>(l_width) * l_height; }
  std::size_t rock_cells() const {
    return static_cast<std::size_t>(rock_width()) * rock_height();
  }
  std::size_t rock_cells_per_l() const { return static_cast<std::size_t>(scale) * scale; }

  bool contains(LCell c) const { return c.x >= 0 && c.y >= 0 && c.x < l_width && c.y < l_height; }
  bool contains(RockCell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < rock_width() && c.y < rock_height();
  }

  std::size_t index(LCell c) const { return static_cast<std::size_t>(c.y) * l_width + c.x; }
  std::size_t index(RockCell c) const {
    return static_cast<std::size_t>(c.y) * rock_width() + c.x;
  }
  LCell l_cell(std::size_t i) const {
    return {static_cast<int>(i % l_width), static_cast<int>(i / l_width)};
  }
  LCell parent(RockCell c) const { return {c.x / scale, c.y / scale}; }

  void check(LCell c) const {
    if (!contains(c)) {
      throw OutOfBounds("L cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                        ") outside " + std::to_string(l_width) + "x" + std::to_string(l_height));
    }
  }
  void check(RockCell c) const {
    if (!contains(c)) {
      throw OutOfBounds("rock cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                        ") outside the rock grid");
    }
  }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

enum class Heading : std::uint8_t { E = 0, SE, S, SW, W, NW, N, NE };

inline constexpr int kHeadings = 8;

inline constexpr std::array<int, kHeadings> kHeadingDx = {1, 1, 0, -1, -1, -1, 0, 1};
inline constexpr std::array<int, kHeadings> kHeadingDy = {0, 1, 1, 1, 0, -1, -1, -1};

// Rotate by steps * 45 degrees; positive is clockwise.
constexpr Heading rotate(Heading h, int steps) {
  return static_cast<Heading>(((static_cast<int>(h) + steps) % kHeadings + kHeadings) % kHeadings);
}

inline const char* heading_name(Heading h) {
  static constexpr std::array<const char*, kHeadings> names = {"E", "SE", "S", "SW",
                                                               "W", "NW", "N", "NE"};
  return names[static_cast<int>(h)];
}

struct Pose {
  int x = 0;
  int y = 0;
  Heading heading = Heading::E;

  LCell cell() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

enum class SensorKind : std::uint8_t { Remote = 0, Local = 1 };

inline const char* sensor_name(SensorKind s) { return s == SensorKind::Remote ? "remote" : "local"; }

// Remote field of view in rock cells: depth along the heading, width across it.
struct FovSpec {
  int depth = 50;
  int width = 40;
  friend bool operator==(const FovSpec&, const FovSpec&) = default;
};

// Set of rock cells covered by one sensing action, sorted by rock-grid index.
class Footprint {
 public:
  Footprint() = default;
  Footprint(const GridGeometry& geo, std::vector<RockCell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end(), [&](RockCell a, RockCell b) {
      return geo.index(a) < geo.index(b);
    });
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    keys_.reserve(cells_.size());
    for (RockCell c : cells_) keys_.push_back(geo.index(c));
  }

  const std::vector<RockCell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool contains(const GridGeometry& geo, RockCell c) const {
    if (!geo.contains(c)) return false;
    return std::binary_search(keys_.begin(), keys_.end(), geo.index(c));
  }

 private:
  std::vector<RockCell> cells_;
  std::vector<std::size_t> keys_;
};

// Rock cells of one L cell.
inline Footprint local_footprint(const GridGeometry& geo, LCell cell) {
  geo.check(cell);
  std::vector<RockCell> cells;
  cells.reserve(geo.rock_cells_per_l());
  for (int dy = 0; dy < geo.scale; ++dy) {
    for (int dx = 0; dx < geo.scale; ++dx) {
      cells.push_back({cell.x * geo.scale + dx, cell.y * geo.scale + dy});
    }
  }
  return Footprint(geo, std::move(cells));
}

// The fov rectangle projected ahead of the robot. The near edge is anchored
// half an L cell from the robot's cell centre along the heading; a rock cell
// belongs to the footprint iff its centre lies inside the rotated rectangle
// (0 <= along < depth, |across| <= width / 2). Clipped to the rock grid.
inline Footprint remote_footprint(const GridGeometry& geo, const FovSpec& fov, const Pose& pose) {
  geo.check(pose.cell());
  const int h = static_cast<int>(pose.heading);
  const double norm = std::hypot(kHeadingDx[h], kHeadingDy[h]);
  const double ux = kHeadingDx[h] / norm;
  const double uy = kHeadingDy[h] / norm;
  const double vx = -uy;
  const double vy = ux;
  const double s = geo.scale;
  const double ax = (pose.x + 0.5) * s + ux * s / 2.0;
  const double ay = (pose.y + 0.5) * s + uy * s / 2.0;
  const double half = fov.width / 2.0;

  double min_x = ax, max_x = ax, min_y = ay, max_y = ay;
  for (double a : {0.0, static_cast<double>(fov.depth)}) {
    for (double b : {-half, half}) {
      const double px = ax + ux * a + vx * b;
      const double py = ay + uy * a + vy * b;
      min_x = std::min(min_x, px);
      max_x = std::max(max_x, px);
      min_y = std::min(min_y, py);
      max_y = std::max(max_y, py);
    }
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)) - 1);
  const int x1 = std::min(geo.rock_width() - 1, static_cast<int>(std::ceil(max_x)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)) - 1);
  const int y1 = std::min(geo.rock_height() - 1, static_cast<int>(std::ceil(max_y)) + 1);

  constexpr double kEps = 1e-9;
  std::vector<RockCell> cells;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - ax;
      const double dy = y + 0.5 - ay;
      const double along = dx * ux + dy * uy;
      const double across = dx * vx + dy * vy;
      if (along >= -kEps && along < fov.depth - kEps && std::abs(across) <= half + kEps) {
        cells.push_back({x, y});
      }
    }
  }
  return Footprint(geo, std::move(cells));
}

// Everything a sensor reading needs to know about where it was taken.
struct SensingTarget {
  SensorKind sensor = SensorKind::Remote;
  LCell cell;
  Footprint footprint;
};

inline SensingTarget make_target(const GridGeometry& geo, const FovSpec& fov, const Pose& pose,
                                 SensorKind sensor) {
  if (sensor == SensorKind::Local) {
    return {sensor, pose.cell(), local_footprint(geo, pose.cell())};
  }
  return {sensor, pose.cell(), remote_footprint(geo, fov, pose)};
}

}  // namespace sciplan
