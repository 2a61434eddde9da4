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

#include <cstdint>
#include <string>

#include "sciplan/belief.hpp"
#include "sciplan/grid.hpp"
#include "sciplan/knowledge_net.hpp"
#include "sciplan/rng.hpp"
#include "sciplan/sampling.hpp"
#include "sciplan/sensing.hpp"
#include "sciplan/world.hpp"

namespace sciplan {

// What a planner may know about the mission besides the belief: geometry,
// sensor field of view, the occupancy map, the action rules and the rock
// density assumed when imagining unsearched ground.
struct PlanningModel {
  GridGeometry geometry;
  FovSpec fov;
  OccupancyMap occupancy;
  ActionRules rules;
  RockDensityPrior density;

  static PlanningModel for_world(const WorldState& world, const ActionRules& rules,
                                 const RockDensityPrior& density) {
    PlanningModel m;
    m.geometry = world.geometry;
    m.fov = world.config.fov;
    m.occupancy = {world.geometry.l_width, world.geometry.l_height, world.obstacles};
    m.rules = rules;
    m.density = density;
    return m;
  }
};

struct PlanningContext {
  const BeliefState& belief;
  Pose pose;
  Budget remaining;
  const KnowledgeNet& net;
  const PlanningModel& model;

  std::vector<SensingAction> legal() const {
    return legal_actions(pose, remaining, model.rules.costs, model.occupancy);
  }
};

enum class ExplorationLog { Natural, Base2 };

struct PlannerConfig {
  int iterations = 100;
  double cp = 0.1;
  int greedy_samples = 20;
  std::uint64_t seed = 0;
  ExplorationLog log_base = ExplorationLog::Natural;

  void validate() const {
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (cp < 0.0) throw ConfigError("cp must be >= 0");
    if (greedy_samples < 1) throw ConfigError("greedy_samples must be >= 1");
  }
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  // Throws TerminalState when no legal action exists.
  virtual SensingAction plan(const PlanningContext& ctx, Rng& rng) = 0;
  // Called at the start of each mission.
  virtual void reset() {}
};

// Applies one action to a belief with an imagined reading; returns the
// L-entropy removed. The pose is advanced in place.
inline double simulate_step(BeliefState& belief, Pose& pose, const SensingAction& action,
                            const KnowledgeNet& net, const PlanningModel& model, Rng& rng) {
  pose = apply_move(pose, action.move, model.occupancy);
  if (!model.rules.fires(action)) return 0.0;
  const SensingTarget target = make_target(model.geometry, model.fov, pose, action.sensor);
  const Observation obs = sample_observation(belief, target, net, model.density, rng);
  return belief.apply(obs, net);
}

}  // namespace sciplan
