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
#include <string>
#include <vector>

#include "sciplan/errors.hpp"
#include "sciplan/planners/policy.hpp"

namespace sciplan {

// Mean imagined entropy drop of one action over `samples` independent draws.
inline double expected_gain_estimate(const PlanningContext& ctx, const SensingAction& action,
                                     int samples, Rng& rng) {
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    BeliefState copy = ctx.belief;
    Pose pose = ctx.pose;
    total += simulate_step(copy, pose, action, ctx.net, ctx.model, rng);
  }
  return total / samples;
}

// Myopic choice: highest estimated gain per unit cost. Ties go to the
// earlier action in enumeration order.
inline SensingAction greedy_plan(const PlanningContext& ctx, const PlannerConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto legal = ctx.legal();
  if (legal.empty()) throw TerminalState("no legal action fits the remaining budget");
  SensingAction best = legal.front();
  double best_ratio = -1.0;
  for (const auto& a : legal) {
    const double ratio = expected_gain_estimate(ctx, a, cfg.greedy_samples, rng) /
                         cost(a, ctx.model.rules.costs);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = a;
    }
  }
  return best;
}

inline SensingAction random_plan(const PlanningContext& ctx, Rng& rng) {
  const auto legal = ctx.legal();
  if (legal.empty()) throw TerminalState("no legal action fits the remaining budget");
  return legal[rng.uniform_index(legal.size())];
}

class GreedyPlanner : public Policy {
 public:
  explicit GreedyPlanner(PlannerConfig cfg) : cfg_(cfg) { cfg_.validate(); }
  std::string name() const override { return "greedy"; }
  SensingAction plan(const PlanningContext& ctx, Rng& rng) override {
    return greedy_plan(ctx, cfg_, rng);
  }

 private:
  PlannerConfig cfg_;
};

class RandomPlanner : public Policy {
 public:
  std::string name() const override { return "random"; }
  SensingAction plan(const PlanningContext& ctx, Rng& rng) override {
    return random_plan(ctx, rng);
  }
};

// Five-stage sweep repeated until the budget runs out. Facing direction h at
// the start of a cycle:
//
//   stage  action            sensor   faces after   sim cost
//   0      rotate -90        remote   h - 90        1
//   1      rotate +90        remote   h             1
//   2      rotate +90        remote   h + 90        1
//   3      rotate -90        local    h             8
//   4      forward           remote   h             1
//
// i.e. look left, ahead and right, read the current cell, step forward.
// A stage whose action is illegal (wall, obstacle, unaffordable) is
// skipped and the counter advances.
class FixedPlanner : public Policy {
 public:
  static constexpr std::array<SensingAction, 5> kStages = {
      SensingAction{Move::RotateMinus90, SensorKind::Remote},
      SensingAction{Move::RotatePlus90, SensorKind::Remote},
      SensingAction{Move::RotatePlus90, SensorKind::Remote},
      SensingAction{Move::RotateMinus90, SensorKind::Local},
      SensingAction{Move::Forward, SensorKind::Remote}};

  std::string name() const override { return "fixed"; }

  SensingAction plan(const PlanningContext& ctx, Rng&) override {
    const auto legal = ctx.legal();
    for (std::size_t tries = 0; tries < kStages.size(); ++tries) {
      const SensingAction a = kStages[stage_];
      stage_ = (stage_ + 1) % kStages.size();
      for (const auto& l : legal) {
        if (l == a) return a;
      }
    }
    throw TerminalState("no stage of the fixed sweep is legal");
  }

  void reset() override { stage_ = 0; }
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_ = 0;
};

}  // namespace sciplan
