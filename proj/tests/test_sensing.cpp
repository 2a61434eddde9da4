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

#include <gtest/gtest.h>

#include "sciplan/rng.hpp"
#include "sciplan/sensing.hpp"

namespace sciplan {
namespace {

const OccupancyMap kOpen = OccupancyMap::open(10, 10);

TEST(ApplyMove, ForwardEast) {
  EXPECT_EQ(apply_move({5, 5, Heading::E}, Move::Forward, kOpen), (Pose{6, 5, Heading::E}));
}

TEST(ApplyMove, ForwardDiagonal) {
  EXPECT_EQ(apply_move({5, 5, Heading::NE}, Move::Forward, kOpen), (Pose{6, 4, Heading::NE}));
}

TEST(ApplyMove, PositiveRotationIsClockwise) {
  EXPECT_EQ(apply_move({5, 5, Heading::E}, Move::RotatePlus90, kOpen), (Pose{5, 5, Heading::S}));
  EXPECT_EQ(apply_move({5, 5, Heading::E}, Move::RotateMinus90, kOpen), (Pose{5, 5, Heading::N}));
  EXPECT_EQ(apply_move({5, 5, Heading::N}, Move::RotatePlus45, kOpen), (Pose{5, 5, Heading::NE}));
  EXPECT_EQ(apply_move({5, 5, Heading::E}, Move::RotateMinus45, kOpen), (Pose{5, 5, Heading::NE}));
}

TEST(ApplyMove, LeavingTheGridIsIllegal) {
  EXPECT_THROW(apply_move({0, 0, Heading::W}, Move::Forward, kOpen), IllegalAction);
  for (const auto& a : legal_actions({0, 0, Heading::W}, 100, CostModel::sim(), kOpen)) {
    EXPECT_NE(a.move, Move::Forward);
  }
}

TEST(ApplyMove, ObstaclesBlockForward) {
  OccupancyMap map = kOpen;
  map.blocked.assign(100, false);
  map.blocked[5 * 10 + 6] = true;
  EXPECT_FALSE(try_move({5, 5, Heading::E}, Move::Forward, map).has_value());
  EXPECT_TRUE(try_move({5, 5, Heading::S}, Move::Forward, map).has_value());
}

TEST(LegalActions, InteriorWithLargeBudgetHasAllTen) {
  EXPECT_EQ(legal_actions({5, 5, Heading::E}, 100, CostModel::sim(), kOpen).size(), 10u);
}

TEST(LegalActions, SmallBudgetExcludesLocal) {
  const auto legal = legal_actions({5, 5, Heading::E}, 4, CostModel::sim(), kOpen);
  ASSERT_EQ(legal.size(), 5u);
  for (const auto& a : legal) EXPECT_EQ(a.sensor, SensorKind::Remote);
}

TEST(LegalActions, ZeroBudgetIsTerminal) {
  EXPECT_TRUE(legal_actions({5, 5, Heading::E}, 0, CostModel::sim(), kOpen).empty());
}

TEST(Cost, Presets) {
  EXPECT_EQ(cost({Move::Forward, SensorKind::Remote}, CostModel::sim()), 1);
  EXPECT_EQ(cost({Move::Forward, SensorKind::Local}, CostModel::sim()), 8);
  EXPECT_EQ(cost({Move::RotatePlus45, SensorKind::Local}, CostModel::hardware()), 5);
  EXPECT_EQ(CostModel::preset("hardware").local, 5);
  EXPECT_THROW(CostModel::preset("lunar"), ConfigError);
}

TEST(Actions, UniverseHasTenDistinctNamedActions) {
  for (std::size_t i = 0; i < kAllActions.size(); ++i) {
    EXPECT_EQ(action_index(kAllActions[i]), i);
    EXPECT_EQ(action_from_name(action_name(kAllActions[i])), kAllActions[i]);
  }
  EXPECT_THROW(action_from_name("jump/remote"), ConfigError);
}

TEST(SensingProperty, RandomLegalSequencesRespectBudgetAndKinematics) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    Pose pose{static_cast<int>(rng.uniform_index(10)), static_cast<int>(rng.uniform_index(10)),
              static_cast<Heading>(rng.uniform_index(8))};
    Budget remaining = static_cast<Budget>(rng.uniform_index(60));
    std::size_t previous = 10;
    while (true) {
      const auto legal = legal_actions(pose, remaining, CostModel::sim(), kOpen);
      ASSERT_LE(legal.size(), 10u);
      if (legal.empty()) break;
      const auto a = legal[rng.uniform_index(legal.size())];
      const Pose next = apply_move(pose, a.move, kOpen);
      if (a.move == Move::Forward) {
        EXPECT_EQ(next.heading, pose.heading);
      } else {
        EXPECT_EQ(next.x, pose.x);
        EXPECT_EQ(next.y, pose.y);
      }
      pose = next;
      remaining -= cost(a, CostModel::sim());
      ASSERT_GE(remaining, 0);
    }
    // Shrinking the budget never adds actions.
    for (Budget b = 10; b >= 0; --b) {
      const auto n = legal_actions({5, 5, Heading::E}, b, CostModel::sim(), kOpen).size();
      EXPECT_LE(n, previous);
      previous = n;
    }
  }
}

}  // namespace
}  // namespace sciplan
