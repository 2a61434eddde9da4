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

#include <cmath>
#include <set>

#include "sciplan/world.hpp"

namespace sciplan {
namespace {

TEST(Generate, FullScaleHasTwentyFiveHomogeneousRegions) {
  WorldConfig c = WorldConfig::full_scale();
  c.seed = 11;
  const WorldState w = generate(c, default_knowledge_net());
  int regions = 0;
  for (int ry = 0; ry < 5; ++ry) {
    for (int rx = 0; rx < 5; ++rx) {
      ++regions;
      const int label = w.l_at({rx * 8, ry * 8});
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) ASSERT_EQ(w.l_at({rx * 8 + x, ry * 8 + y}), label);
    }
  }
  EXPECT_EQ(regions, 25);
  EXPECT_EQ(w.l_truth.size(), 1600u);
  EXPECT_EQ(w.geometry.scale, 20);
}

TEST(Generate, SameSeedSameWorld) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 5;
  const KnowledgeNet net = default_knowledge_net();
  const WorldState a = generate(c, net), b = generate(c, net);
  EXPECT_EQ(a.l_truth, b.l_truth);
  EXPECT_EQ(a.b_truth, b.b_truth);
  EXPECT_EQ(a.rocks, b.rocks);
  c.seed = 6;
  EXPECT_NE(generate(c, net).rocks, a.rocks);
}

TEST(Generate, DeterministicCptGivesSingleRockClass) {
  KnowledgeNet net = default_knowledge_net();
  net.p_r_given_l = Cpt::identity(3);
  WorldConfig c = WorldConfig::desk_scale();
  c.region_width = c.region_height = 10;
  c.seed = 3;
  const WorldState w = generate(c, net);
  ASSERT_FALSE(w.rocks.empty());
  for (const auto& r : w.rocks) EXPECT_EQ(r.r, w.l_truth[0]);
}

TEST(Generate, RocksOccupyDistinctCellsOfTheirParent) {
  WorldConfig c = WorldConfig::desk_scale();
  c.rock_density = 5.0;
  c.seed = 9;
  const WorldState w = generate(c, default_knowledge_net());
  std::set<std::pair<int, int>> cells;
  for (const auto& r : w.rocks) {
    EXPECT_TRUE(w.geometry.contains(r.cell));
    EXPECT_TRUE(cells.insert({r.cell.x, r.cell.y}).second);
    EXPECT_EQ(r.f.size(), 3u);
  }
}

TEST(Generate, RejectsBadDivisibility) {
  const KnowledgeNet net = default_knowledge_net();
  WorldConfig c = WorldConfig::desk_scale();
  c.region_width = 3;
  EXPECT_THROW(generate(c, net), ConfigError);
  c = WorldConfig::desk_scale();
  c.rock_width = 205;
  EXPECT_THROW(generate(c, net), ConfigError);
  c = WorldConfig::desk_scale();
  c.rock_height = 100;
  EXPECT_THROW(generate(c, net), ConfigError);
}

TEST(Generate, RockClassesFollowConditionalTable) {
  KnowledgeNet net = default_knowledge_net();
  net.p_r_given_l = Cpt({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.1, 0.8}});
  std::array<std::array<long, 3>, 3> counts{};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    WorldConfig c = WorldConfig::desk_scale();
    c.seed = seed;
    const WorldState w = generate(c, net);
    for (const auto& r : w.rocks) ++counts[w.l_at(w.geometry.parent(r.cell))][r.r];
  }
  for (int l = 0; l < 3; ++l) {
    const long n = counts[l][0] + counts[l][1] + counts[l][2];
    ASSERT_GT(n, 1000);
    for (int r = 0; r < 3; ++r) {
      const double p = net.p_r_given_l(l, r);
      EXPECT_NEAR(static_cast<double>(counts[l][r]) / n, p, 3 * std::sqrt(p * (1 - p) / n));
    }
  }
}

TEST(Footprint, AxisAlignedRemoteIsFiftyByForty) {
  const GridGeometry geo{40, 40, 20};
  const auto fp = remote_footprint(geo, FovSpec{50, 40}, Pose{10, 20, Heading::E});
  ASSERT_EQ(fp.size(), 2000u);
  int min_x = 1 << 30, max_x = -1, min_y = 1 << 30, max_y = -1;
  for (auto c : fp.cells()) {
    min_x = std::min(min_x, c.x), max_x = std::max(max_x, c.x);
    min_y = std::min(min_y, c.y), max_y = std::max(max_y, c.y);
  }
  EXPECT_EQ(min_x, 220);  // starts at the robot cell's east edge
  EXPECT_EQ(max_x, 269);
  EXPECT_EQ(min_y, 390);
  EXPECT_EQ(max_y, 429);
}

TEST(Footprint, LocalIsOneLCell) {
  const GridGeometry geo{40, 40, 20};
  for (auto h : {Heading::E, Heading::NW, Heading::S}) {
    const auto t = make_target(geo, FovSpec{}, Pose{3, 7, h}, SensorKind::Local);
    EXPECT_EQ(t.footprint.size(), 400u);
    for (auto c : t.footprint.cells()) EXPECT_EQ(geo.parent(c), (LCell{3, 7}));
  }
}

TEST(Footprint, DiagonalHeadingCoversAboutTheSameArea) {
  const GridGeometry geo{40, 40, 20};
  for (auto h : {Heading::SE, Heading::NE, Heading::SW, Heading::NW}) {
    const auto fp = remote_footprint(geo, FovSpec{50, 40}, Pose{20, 20, h});
    EXPECT_NEAR(static_cast<double>(fp.size()), 2000.0, 100.0) << heading_name(h);
  }
}

TEST(Footprint, ClippedAtGridEdgeAndHeadingSymmetric) {
  const GridGeometry geo{40, 40, 20};
  EXPECT_TRUE(remote_footprint(geo, FovSpec{}, Pose{39, 5, Heading::E}).empty());
  const auto n = remote_footprint(geo, FovSpec{}, Pose{20, 20, Heading::N}).size();
  const auto s = remote_footprint(geo, FovSpec{}, Pose{20, 20, Heading::S}).size();
  const auto w = remote_footprint(geo, FovSpec{}, Pose{20, 20, Heading::W}).size();
  EXPECT_EQ(n, 2000u);
  EXPECT_EQ(s, 2000u);
  EXPECT_EQ(w, 2000u);
  for (auto c : remote_footprint(geo, FovSpec{}, Pose{1, 1, Heading::NW}).cells()) {
    EXPECT_TRUE(geo.contains(c));
  }
}

TEST(TrueObserve, EmptyFootprintGivesNoRocks) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 1;
  const KnowledgeNet net = default_knowledge_net();
  const WorldState w = generate(c, net);
  Rng rng(1);
  const auto t = make_target(w.geometry, c.fov, Pose{9, 0, Heading::E}, SensorKind::Remote);
  EXPECT_TRUE(std::get<RemoteObservation>(true_observe(w, t, net, rng)).rocks.empty());
}

TEST(TrueObserve, IdentitySensorReportsTrueFeatures) {
  KnowledgeNet net = default_knowledge_net();
  for (auto& t : net.p_z_given_f) t = Cpt::identity(3);
  WorldConfig c = WorldConfig::desk_scale();
  c.rock_density = 3.0;
  c.seed = 4;
  const WorldState w = generate(c, net);
  Rng rng(2);
  const auto t = make_target(w.geometry, c.fov, Pose{2, 4, Heading::E}, SensorKind::Remote);
  const auto obs = std::get<RemoteObservation>(true_observe(w, t, net, rng));
  std::size_t inside = 0;
  for (const auto& r : w.rocks) inside += t.footprint.contains(w.geometry, r.cell);
  ASSERT_EQ(obs.rocks.size(), inside);
  ASSERT_GT(inside, 0u);
  for (const auto& r : obs.rocks) EXPECT_EQ(r.z, w.rocks[r.id].f);
}

TEST(TrueObserve, LocalReadingIsTrueBByDefault) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 12;
  const KnowledgeNet net = default_knowledge_net();
  const WorldState w = generate(c, net);
  Rng rng(1);
  for (int y = 0; y < 10; ++y) {
    const auto t = make_target(w.geometry, c.fov, Pose{3, y, Heading::E}, SensorKind::Local);
    EXPECT_EQ(std::get<LocalObservation>(true_observe(w, t, net, rng)).b, w.b_at({3, y}));
  }
}

TEST(TrueObserve, ConfusionMatrixMisreadRate) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 12;
  c.b_confusion = Cpt::diagonal(3, 0.8);
  const KnowledgeNet net = default_knowledge_net();
  const WorldState w = generate(c, net);
  Rng rng(77);
  const auto t = make_target(w.geometry, c.fov, Pose{5, 5, Heading::E}, SensorKind::Local);
  const int n = 10000;
  int wrong = 0;
  for (int i = 0; i < n; ++i) {
    wrong += std::get<LocalObservation>(true_observe(w, t, net, rng)).b != w.b_at({5, 5});
  }
  EXPECT_NEAR(static_cast<double>(wrong) / n, 0.2, 3 * std::sqrt(0.2 * 0.8 / n));
}

TEST(TrueObserve, DeterministicGivenSeed) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 2;
  const KnowledgeNet net = default_knowledge_net();
  const WorldState w = generate(c, net);
  const auto t = make_target(w.geometry, c.fov, Pose{1, 1, Heading::SE}, SensorKind::Remote);
  Rng a(5), b(5);
  const auto oa = std::get<RemoteObservation>(true_observe(w, t, net, a));
  const auto ob = std::get<RemoteObservation>(true_observe(w, t, net, b));
  ASSERT_EQ(oa.rocks.size(), ob.rocks.size());
  for (std::size_t i = 0; i < oa.rocks.size(); ++i) EXPECT_EQ(oa.rocks[i].z, ob.rocks[i].z);
}

TEST(WorldJson, RoundTrip) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 21;
  c.obstacles = {{1, 2}, {3, 3}};
  c.b_confusion = Cpt::diagonal(3, 0.9);
  const WorldState w = generate(c, default_knowledge_net());
  const WorldState r = world_from_json(nlohmann::json::parse(to_json(w).dump()));
  EXPECT_EQ(r.l_truth, w.l_truth);
  EXPECT_EQ(r.b_truth, w.b_truth);
  EXPECT_EQ(r.rocks, w.rocks);
  EXPECT_EQ(r.obstacles, w.obstacles);
  EXPECT_EQ(r.config.seed, 21u);
  EXPECT_TRUE(r.config.b_confusion.has_value());
  EXPECT_EQ(to_json(r).dump(), to_json(w).dump());
}

TEST(WorldJson, LabelsMustFitTheNet) {
  WorldConfig c = WorldConfig::desk_scale();
  c.seed = 1;
  const KnowledgeNet net = default_knowledge_net();
  WorldState w = generate(c, net);
  EXPECT_NO_THROW(validate_world(w, net));
  w.l_truth[3] = 3;
  EXPECT_THROW(validate_world(w, net), ConfigError);
  w = generate(c, net);
  ASSERT_FALSE(w.rocks.empty());
  w.rocks[0].f.pop_back();
  EXPECT_THROW(validate_world(w, net), ConfigError);
}

TEST(WorldJson, MissingFileIsAConfigError) {
  EXPECT_THROW(load_world("/nonexistent/world.json"), ConfigError);
}

}  // namespace
}  // namespace sciplan
