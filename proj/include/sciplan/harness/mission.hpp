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

// Sense-plan-act loop: ask the policy for an action, move, read the real
// world, update the belief, pay for the sensor, until no action fits.

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sciplan/belief.hpp"
#include "sciplan/errors.hpp"
#include "sciplan/metrics.hpp"
#include "sciplan/planners/factory.hpp"
#include "sciplan/world.hpp"

namespace sciplan {

struct StepRecord {
  SensingAction action;
  Pose pose;            // after the move
  Budget remaining = 0; // after paying
  double gain = 0.0;    // L entropy removed by this step (bits)
  double accuracy = 0.0;
};

struct TrialResult {
  int trial = 0;
  std::string policy;
  Budget budget = 0;
  std::uint64_t world_seed = 0;
  std::uint64_t mission_seed = 0;
  std::uint64_t planner_seed = 0;
  Pose start;
  double information_gain = 0.0;
  double accuracy_score = 0.0;
  std::vector<StepRecord> steps;
  double wall_seconds = 0.0;
  long planner_iterations = 0;
  double planner_seconds = 0.0;

  Budget spent() const { return budget - (steps.empty() ? budget : steps.back().remaining); }
};

struct MissionSetup {
  Budget budget = 0;
  Pose start;
  ActionRules rules;
  RockDensityPrior density;
  std::uint64_t mission_seed = 0;  // drives the real sensor noise
  std::uint64_t planner_seed = 0;
};

class Mission {
 public:
  Mission(const WorldState& world, const KnowledgeNet& net, const MissionSetup& setup)
      : world_(world),
        net_(net),
        setup_(setup),
        model_(PlanningModel::for_world(world, setup.rules, setup.density)),
        belief_(initial_belief(world.geometry, net)),
        h_initial_(joint_l_entropy(belief_)),
        pose_(setup.start),
        remaining_(setup.budget),
        obs_rng_(setup.mission_seed) {
    setup.rules.costs.validate();
    if (setup.budget < 0) throw ConfigError("budget must be >= 0");
    world.geometry.check(setup.start.cell());
    if (world.blocked(setup.start.cell())) throw ConfigError("start pose is inside an obstacle");
  }

  std::vector<SensingAction> legal() const {
    return legal_actions(pose_, remaining_, model_.rules.costs, model_.occupancy);
  }

  PlanningContext context() const { return {belief_, pose_, remaining_, net_, model_}; }

  // Executes one action against the real world; throws IllegalAction if it
  // is not currently legal.
  const StepRecord& execute(const SensingAction& a) {
    bool ok = false;
    for (const auto& l : legal()) ok = ok || l == a;
    if (!ok) throw IllegalAction("action " + action_name(a) + " is not legal here");
    pose_ = apply_move(pose_, a.move, model_.occupancy);
    double gain = 0.0;
    if (model_.rules.fires(a)) {
      const SensingTarget target = make_target(model_.geometry, model_.fov, pose_, a.sensor);
      gain = belief_.apply(true_observe(world_, target, net_, obs_rng_), net_);
    }
    remaining_ -= cost(a, model_.rules.costs);
    steps_.push_back({a, pose_, remaining_, gain, accuracy_score(belief_, world_)});
    return steps_.back();
  }

  const BeliefState& belief() const { return belief_; }
  const std::vector<StepRecord>& steps() const { return steps_; }
  Budget remaining() const { return remaining_; }
  const Pose& pose() const { return pose_; }
  double information_gain() const { return h_initial_ - joint_l_entropy(belief_); }
  double accuracy() const { return accuracy_score(belief_, world_); }

 private:
  const WorldState& world_;
  const KnowledgeNet& net_;
  MissionSetup setup_;
  PlanningModel model_;
  BeliefState belief_;
  double h_initial_;
  Pose pose_;
  Budget remaining_;
  Rng obs_rng_;
  std::vector<StepRecord> steps_;
};

namespace detail {

inline TrialResult finish(const Mission& m, const MissionSetup& setup, std::string policy) {
  TrialResult r;
  r.policy = std::move(policy);
  r.budget = setup.budget;
  r.mission_seed = setup.mission_seed;
  r.planner_seed = setup.planner_seed;
  r.start = setup.start;
  r.information_gain = m.information_gain();
  r.accuracy_score = m.accuracy();
  r.steps = m.steps();
  return r;
}

}  // namespace detail

// Runs the policy from a uniform belief until no legal action remains.
inline TrialResult run_mission(const WorldState& world, const KnowledgeNet& net, Policy& policy,
                               const MissionSetup& setup) {
  const auto t0 = std::chrono::steady_clock::now();
  Mission mission(world, net, setup);
  policy.reset();
  Rng planner_rng(setup.planner_seed);
  while (!mission.legal().empty()) {
    SensingAction a;
    try {
      a = policy.plan(mission.context(), planner_rng);
    } catch (const TerminalState&) {
      break;
    }
    mission.execute(a);
  }
  TrialResult r = detail::finish(mission, setup, policy.name());
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (const auto* mcts = dynamic_cast<const MctsPlanner*>(&policy)) {
    r.planner_iterations = mcts->search_iterations();
    r.planner_seconds = mcts->search_seconds();
  }
  return r;
}

// Re-executes a logged action sequence against the world with the same
// sensor-noise seed and re-scores it.
inline TrialResult replay_actions(const WorldState& world, const KnowledgeNet& net,
                                  std::span<const SensingAction> actions, const MissionSetup& setup,
                                  std::string policy = "replay") {
  Mission mission(world, net, setup);
  for (const auto& a : actions) mission.execute(a);
  return detail::finish(mission, setup, std::move(policy));
}

// Uniform start cell and heading, avoiding obstacles.
inline Pose random_start(const WorldState& world, std::uint64_t seed) {
  Rng rng(seed);
  const auto& geo = world.geometry;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Pose p{static_cast<int>(rng.uniform_index(geo.l_width)),
           static_cast<int>(rng.uniform_index(geo.l_height)),
           static_cast<Heading>(rng.uniform_index(kHeadings))};
    if (!world.blocked(p.cell())) return p;
  }
  throw ConfigError("could not find an obstacle-free start cell");
}

// ---- run log -------------------------------------------------------------

inline nlohmann::json pose_to_json(const Pose& p) {
  return {{"x", p.x}, {"y", p.y}, {"heading", heading_name(p.heading)}};
}

inline Pose pose_from_json(const nlohmann::json& j) {
  const std::string h = j.at("heading").get<std::string>();
  for (int i = 0; i < kHeadings; ++i) {
    if (h == heading_name(static_cast<Heading>(i))) {
      return {j.at("x").get<int>(), j.at("y").get<int>(), static_cast<Heading>(i)};
    }
  }
  throw ConfigError("unknown heading '" + h + "'");
}

inline nlohmann::json trace_to_json(const TrialResult& r) {
  auto steps = nlohmann::json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"action", action_name(s.action)},
                     {"pose", pose_to_json(s.pose)},
                     {"remaining", s.remaining},
                     {"gain", s.gain},
                     {"accuracy", s.accuracy}});
  }
  return steps;
}

}  // namespace sciplan
