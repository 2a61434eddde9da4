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

#include <memory>
#include <string>

#include "sciplan/planners/baselines.hpp"
#include "sciplan/planners/mcts.hpp"
#include "sciplan/planners/policy.hpp"

namespace sciplan {

// Policies by name: mcts, greedy, random, fixed.
inline std::unique_ptr<Policy> make_policy(const std::string& name, const PlannerConfig& cfg,
                                           const std::string& label = "") {
  if (name == "mcts") {
    return std::make_unique<MctsPlanner>(
        cfg, label.empty() ? "mcts-" + std::to_string(cfg.iterations) : label);
  }
  if (name == "greedy") return std::make_unique<GreedyPlanner>(cfg);
  if (name == "random") return std::make_unique<RandomPlanner>();
  if (name == "fixed") return std::make_unique<FixedPlanner>();
  throw ConfigError("unknown policy '" + name + "' (expected mcts, greedy, random or fixed)");
}

}  // namespace sciplan
