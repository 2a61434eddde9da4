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

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sciplan/belief.hpp"
#include "sciplan/errors.hpp"
#include "sciplan/grid.hpp"
#include "sciplan/knowledge_net.hpp"
#include "sciplan/rng.hpp"

namespace sciplan {

struct WorldConfig {
  int l_width = 40;
  int l_height = 40;
  int region_width = 8;
  int region_height = 8;
  int rock_width = 800;
  int rock_height = 800;
  double rock_density = 1.0;  // mean rocks per L cell
  FovSpec fov;
  std::uint64_t seed = 0;
  std::vector<LCell> obstacles;
  std::optional<Cpt> b_confusion;  // P(reading | true B); identity when unset

  // Throws ConfigError on inconsistent dimensions.
  GridGeometry geometry() const {
    if (l_width <= 0 || l_height <= 0) throw ConfigError("L grid must be non-empty");
    if (region_width <= 0 || region_height <= 0 || l_width % region_width != 0 ||
        l_height % region_height != 0) {
      throw ConfigError("L grid " + std::to_string(l_width) + "x" + std::to_string(l_height) +
                        " is not divisible into " + std::to_string(region_width) + "x" +
                        std::to_string(region_height) + " regions");
    }
    if (rock_width <= 0 || rock_height <= 0 || rock_width % l_width != 0 ||
        rock_height % l_height != 0 || rock_width / l_width != rock_height / l_height) {
      throw ConfigError("rock grid must be an equal integer multiple of the L grid");
    }
    if (rock_density < 0.0) throw ConfigError("rock density must be >= 0");
    if (fov.depth <= 0 || fov.width <= 0) throw ConfigError("fov must be positive");
    return {l_width, l_height, rock_width / l_width};
  }

  // 40x40 L cells in 25 regions of 8x8, 800x800 rock grid, 50x40 fov.
  static WorldConfig full_scale() { return WorldConfig{}; }

  // 10x10 L cells in four 5x5 regions, 200x200 rock grid, 50x40 fov.
  static WorldConfig desk_scale() {
    WorldConfig c;
    c.l_width = c.l_height = 10;
    c.region_width = c.region_height = 5;
    c.rock_width = c.rock_height = 200;
    return c;
  }
};

struct Rock {
  RockId id = 0;
  RockCell cell;
  int r = 0;
  std::vector<int> f;  // one true feature per channel
  friend bool operator==(const Rock&, const Rock&) = default;
};

struct WorldState {
  WorldConfig config;
  GridGeometry geometry;
  std::vector<int> l_truth;  // row-major over the L grid
  std::vector<int> b_truth;
  std::vector<Rock> rocks;   // id == index
  std::vector<bool> obstacles;
  std::vector<std::vector<std::size_t>> rocks_by_cell;  // L index -> rock indices

  int l_at(LCell c) const { return l_truth[geometry.index(c)]; }
  int b_at(LCell c) const { return b_truth[geometry.index(c)]; }
  bool blocked(LCell c) const { return obstacles[geometry.index(c)]; }

  void index_rocks() {
    rocks_by_cell.assign(geometry.l_cells(), {});
    for (std::size_t i = 0; i < rocks.size(); ++i) {
      rocks_by_cell[geometry.index(geometry.parent(rocks[i].cell))].push_back(i);
    }
  }
};

// Samples a world from the network: one uniform L label per region, B per
// cell from P(B|L), Poisson(rock_density) rocks per L cell on distinct rock
// cells, R ~ P(R|L) and F ~ P(F|R) per rock. Pure function of (config, net).
inline WorldState generate(const WorldConfig& config, const KnowledgeNet& net) {
  net.validate();
  WorldState w;
  w.config = config;
  w.geometry = config.geometry();
  const GridGeometry& geo = w.geometry;
  if (config.b_confusion && (config.b_confusion->parents() != net.card.b ||
                             config.b_confusion->children() != net.card.b)) {
    throw ConfigError("B confusion matrix must be |B| x |B|");
  }
  Rng rng(config.seed);

  const int regions_x = config.l_width / config.region_width;
  const int regions_y = config.l_height / config.region_height;
  std::vector<int> region_label(static_cast<std::size_t>(regions_x) * regions_y);
  for (auto& label : region_label) label = static_cast<int>(rng.uniform_index(net.card.l));

  w.l_truth.resize(geo.l_cells());
  w.b_truth.resize(geo.l_cells());
  for (int y = 0; y < geo.l_height; ++y) {
    for (int x = 0; x < geo.l_width; ++x) {
      const int region = (y / config.region_height) * regions_x + x / config.region_width;
      const std::size_t i = geo.index(LCell{x, y});
      w.l_truth[i] = region_label[region];
      w.b_truth[i] = static_cast<int>(rng.categorical(net.p_b_given_l.row(w.l_truth[i]).probs()));
    }
  }

  const std::size_t per_cell = geo.rock_cells_per_l();
  std::vector<std::size_t> slots(per_cell);
  for (int y = 0; y < geo.l_height; ++y) {
    for (int x = 0; x < geo.l_width; ++x) {
      const int l = w.l_truth[geo.index(LCell{x, y})];
      const std::size_t count = std::min<std::size_t>(
          static_cast<std::size_t>(rng.poisson(config.rock_density)), per_cell);
      for (std::size_t i = 0; i < per_cell; ++i) slots[i] = i;
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.uniform_index(per_cell - i);
        std::swap(slots[i], slots[j]);
        Rock rock;
        rock.id = static_cast<RockId>(w.rocks.size());
        rock.cell = {x * geo.scale + static_cast<int>(slots[i] % geo.scale),
                     y * geo.scale + static_cast<int>(slots[i] / geo.scale)};
        rock.r = static_cast<int>(rng.categorical(net.p_r_given_l.row(l).probs()));
        for (std::size_t c = 0; c < net.channels(); ++c) {
          rock.f.push_back(static_cast<int>(rng.categorical(net.p_f_given_r[c].row(rock.r).probs())));
        }
        w.rocks.push_back(std::move(rock));
      }
    }
  }

  w.obstacles.assign(geo.l_cells(), false);
  for (LCell c : config.obstacles) {
    geo.check(c);
    w.obstacles[geo.index(c)] = true;
  }
  w.index_rocks();
  return w;
}

// Reading produced by the real environment. Remote: every true rock in the
// footprint with Z ~ P(Z|F_true) per channel. Local: the true B at the
// cell, passed through the configured confusion matrix.
inline Observation true_observe(const WorldState& world, const SensingTarget& target,
                                const KnowledgeNet& net, Rng& rng) {
  const GridGeometry& geo = world.geometry;
  if (target.sensor == SensorKind::Local) {
    geo.check(target.cell);
    int b = world.b_at(target.cell);
    if (world.config.b_confusion) {
      b = static_cast<int>(rng.categorical(world.config.b_confusion->row(b).probs()));
    }
    return LocalObservation{target.cell, b};
  }
  RemoteObservation obs;
  obs.footprint = target.footprint;
  std::vector<std::size_t> touched;
  for (RockCell c : target.footprint.cells()) {
    const std::size_t li = geo.index(geo.parent(c));
    if (touched.empty() || touched.back() != li) touched.push_back(li);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (std::size_t li : touched) {
    for (std::size_t ri : world.rocks_by_cell[li]) {
      const Rock& rock = world.rocks[ri];
      if (!target.footprint.contains(geo, rock.cell)) continue;
      std::vector<int> z(net.channels());
      for (std::size_t c = 0; c < net.channels(); ++c) {
        z[c] = static_cast<int>(rng.categorical(net.p_z_given_f[c].row(rock.f[c]).probs()));
      }
      obs.rocks.push_back({rock.id, rock.cell, std::move(z)});
    }
  }
  return obs;
}

// ---- serialization -------------------------------------------------------

inline nlohmann::json to_json(const WorldConfig& c) {
  nlohmann::json j = {{"l_grid", {c.l_width, c.l_height}},
                      {"region", {c.region_width, c.region_height}},
                      {"rock_grid", {c.rock_width, c.rock_height}},
                      {"rock_density", c.rock_density},
                      {"fov", {c.fov.depth, c.fov.width}},
                      {"seed", c.seed}};
  auto obstacles = nlohmann::json::array();
  for (LCell o : c.obstacles) obstacles.push_back({o.x, o.y});
  j["obstacles"] = obstacles;
  if (c.b_confusion) j["b_confusion"] = c.b_confusion->table();
  return j;
}

// Missing keys keep the full-scale defaults.
inline WorldConfig world_config_from_json(const nlohmann::json& j, WorldConfig c = {}) {
  try {
    auto pair = [&](const char* key, int& a, int& b) {
      if (j.contains(key)) {
        a = j.at(key).at(0).get<int>();
        b = j.at(key).at(1).get<int>();
      }
    };
    pair("l_grid", c.l_width, c.l_height);
    pair("region", c.region_width, c.region_height);
    pair("rock_grid", c.rock_width, c.rock_height);
    pair("fov", c.fov.depth, c.fov.width);
    if (j.contains("rock_density")) c.rock_density = j.at("rock_density").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("obstacles")) {
      c.obstacles.clear();
      for (const auto& o : j.at("obstacles")) c.obstacles.push_back({o.at(0), o.at(1)});
    }
    if (j.contains("b_confusion")) {
      c.b_confusion = Cpt(j.at("b_confusion").get<std::vector<std::vector<double>>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("world config: ") + e.what());
  } catch (const InvalidDistribution& e) {
    throw ConfigError(std::string("world config: ") + e.what());
  }
  c.geometry();
  return c;
}

inline nlohmann::json to_json(const WorldState& w) {
  nlohmann::json j;
  j["config"] = to_json(w.config);
  j["l_truth"] = w.l_truth;
  j["b_truth"] = w.b_truth;
  auto rocks = nlohmann::json::array();
  for (const auto& r : w.rocks) {
    rocks.push_back({{"id", r.id}, {"cell", {r.cell.x, r.cell.y}}, {"r", r.r}, {"f", r.f}});
  }
  j["rocks"] = rocks;
  return j;
}

inline WorldState world_from_json(const nlohmann::json& j) {
  WorldState w;
  try {
    w.config = world_config_from_json(j.at("config"));
    w.geometry = w.config.geometry();
    w.l_truth = j.at("l_truth").get<std::vector<int>>();
    w.b_truth = j.at("b_truth").get<std::vector<int>>();
    for (const auto& r : j.at("rocks")) {
      Rock rock{r.at("id").get<RockId>(), {r.at("cell").at(0), r.at("cell").at(1)},
                r.at("r").get<int>(), r.at("f").get<std::vector<int>>()};
      w.geometry.check(rock.cell);
      if (rock.id != static_cast<RockId>(w.rocks.size())) throw ConfigError("rock ids must be 0..n-1");
      w.rocks.push_back(std::move(rock));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("world: ") + e.what());
  }
  if (w.l_truth.size() != w.geometry.l_cells() || w.b_truth.size() != w.geometry.l_cells()) {
    throw ConfigError("world label grids do not match the configured L grid");
  }
  w.obstacles.assign(w.geometry.l_cells(), false);
  for (LCell c : w.config.obstacles) {
    w.geometry.check(c);
    w.obstacles[w.geometry.index(c)] = true;
  }
  w.index_rocks();
  return w;
}

// Checks that every label in the world is in range for the net.
inline void validate_world(const WorldState& w, const KnowledgeNet& net) {
  for (int l : w.l_truth) {
    if (l < 0 || static_cast<std::size_t>(l) >= net.card.l) throw ConfigError("world L label out of range");
  }
  for (int b : w.b_truth) {
    if (b < 0 || static_cast<std::size_t>(b) >= net.card.b) throw ConfigError("world B label out of range");
  }
  for (const auto& r : w.rocks) {
    if (r.r < 0 || static_cast<std::size_t>(r.r) >= net.card.r || r.f.size() != net.channels()) {
      throw ConfigError("rock " + std::to_string(r.id) + " does not fit the knowledge net");
    }
    for (int f : r.f) {
      if (f < 0 || static_cast<std::size_t>(f) >= net.card.f) {
        throw ConfigError("rock " + std::to_string(r.id) + " feature out of range");
      }
    }
  }
}

inline WorldState load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open world file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return world_from_json(j);
}

inline void save_world(const WorldState& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(w).dump() << '\n';
}

}  // namespace sciplan
