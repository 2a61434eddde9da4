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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sciplan/errors.hpp"
#include "sciplan/grid.hpp"

namespace sciplan {

using Budget = int;

enum class Move : std::uint8_t { Forward, RotateMinus90, RotateMinus45, RotatePlus45, RotatePlus90 };

inline constexpr std::array<Move, 5> kMoves = {Move::Forward, Move::RotateMinus90,
                                               Move::RotateMinus45, Move::RotatePlus45,
                                               Move::RotatePlus90};

inline const char* move_name(Move m) {
  switch (m) {
    case Move::Forward: return "forward";
    case Move::RotateMinus90: return "rot-90";
    case Move::RotateMinus45: return "rot-45";
    case Move::RotatePlus45: return "rot+45";
    case Move::RotatePlus90: return "rot+90";
  }
  return "?";
}

// Heading change in 45 degree steps (positive = clockwise).
constexpr int rotation_steps(Move m) {
  switch (m) {
    case Move::RotateMinus90: return -2;
    case Move::RotateMinus45: return -1;
    case Move::RotatePlus45: return 1;
    case Move::RotatePlus90: return 2;
    case Move::Forward: return 0;
  }
  return 0;
}

// Move first, then fire the sensor from the new pose.
struct SensingAction {
  Move move = Move::Forward;
  SensorKind sensor = SensorKind::Remote;
  friend bool operator==(const SensingAction&, const SensingAction&) = default;
};

// The 10-action universe in enumeration order (move-major, remote first).
inline constexpr std::array<SensingAction, 10> kAllActions = [] {
  std::array<SensingAction, 10> a{};
  for (std::size_t i = 0; i < kMoves.size(); ++i) {
    a[2 * i] = {kMoves[i], SensorKind::Remote};
    a[2 * i + 1] = {kMoves[i], SensorKind::Local};
  }
  return a;
}();

inline std::size_t action_index(const SensingAction& a) {
  return 2 * static_cast<std::size_t>(a.move) + static_cast<std::size_t>(a.sensor);
}

inline std::string action_name(const SensingAction& a) {
  return std::string(move_name(a.move)) + "/" + sensor_name(a.sensor);
}

inline SensingAction action_from_name(std::string_view name) {
  for (const auto& a : kAllActions) {
    if (action_name(a) == name) return a;
  }
  throw ConfigError("unknown action '" + std::string(name) + "'");
}

struct CostModel {
  Budget remote = 1;
  Budget local = 8;

  static CostModel sim() { return {1, 8}; }
  static CostModel hardware() { return {1, 5}; }

  static CostModel preset(std::string_view name) {
    if (name == "sim") return sim();
    if (name == "hardware") return hardware();
    throw ConfigError("unknown cost preset '" + std::string(name) + "' (expected sim or hardware)");
  }

  void validate() const {
    if (remote <= 0 || local <= 0) throw ConfigError("sensor costs must be > 0");
  }
};

// Movement is free; the cost depends only on the sensor fired.
inline Budget cost(const SensingAction& a, const CostModel& m) {
  return a.sensor == SensorKind::Remote ? m.remote : m.local;
}

// Rule set shared by every planner and the mission executor.
struct ActionRules {
  CostModel costs;
  // When false, rotation actions are charged but produce no reading.
  bool sense_on_rotate = true;

  bool fires(const SensingAction& a) const { return sense_on_rotate || a.move == Move::Forward; }
};

// Traversable L cells.
struct OccupancyMap {
  int width = 0;
  int height = 0;
  std::vector<bool> blocked;  // row-major; empty means open terrain

  static OccupancyMap open(int w, int h) { return {w, h, {}}; }

  bool free(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return blocked.empty() || !blocked[static_cast<std::size_t>(y) * width + x];
  }
};

// Pose after the move, or nullopt when it would leave the grid or enter an
// obstacle. Rotations never fail.
inline std::optional<Pose> try_move(const Pose& pose, Move move, const OccupancyMap& map) {
  if (move == Move::Forward) {
    const int h = static_cast<int>(pose.heading);
    Pose next{pose.x + kHeadingDx[h], pose.y + kHeadingDy[h], pose.heading};
    if (!map.free(next.x, next.y)) return std::nullopt;
    return next;
  }
  return Pose{pose.x, pose.y, rotate(pose.heading, rotation_steps(move))};
}

inline Pose apply_move(const Pose& pose, Move move, const OccupancyMap& map) {
  auto next = try_move(pose, move, map);
  if (!next) {
    throw IllegalAction(std::string("move ") + move_name(move) + " from (" +
                        std::to_string(pose.x) + "," + std::to_string(pose.y) + "," +
                        heading_name(pose.heading) + ") leaves traversable terrain");
  }
  return *next;
}

// Actions whose move is feasible and whose cost fits the remaining budget,
// in kAllActions order.
inline std::vector<SensingAction> legal_actions(const Pose& pose, Budget remaining,
                                                const CostModel& costs, const OccupancyMap& map) {
  std::vector<SensingAction> out;
  if (remaining <= 0) return out;
  const bool can_forward = try_move(pose, Move::Forward, map).has_value();
  for (const auto& a : kAllActions) {
    if (a.move == Move::Forward && !can_forward) continue;
    if (cost(a, costs) > remaining) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace sciplan
