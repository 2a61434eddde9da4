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

// Monte Carlo tree search over sensing actions.
//
// A node is a (pose, remaining budget) reached by a sequence of actions;
// observations are not part of the tree. Each iteration descends by UCB
// until a node with untried actions, adds one of them chosen at random,
// then imagines readings along the whole root-to-leaf path followed by a
// uniformly random continuation until nothing fits the budget. The reward
// is the summed entropy drop divided by the entropy at the root, clamped
// to [0, 1], and is averaged into every node on the path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sciplan/errors.hpp"
#include "sciplan/planners/policy.hpp"

namespace sciplan {

// Upper confidence bound of a child; unvisited children score +inf.
inline double ucb(double mean, long parent_visits, long visits, double cp,
                  ExplorationLog base = ExplorationLog::Natural) {
  if (visits < 0 || parent_visits < visits) {
    throw ConsistencyError("ucb: child visits " + std::to_string(visits) +
                           " exceed parent visits " + std::to_string(parent_visits));
  }
  if (visits == 0) return std::numeric_limits<double>::infinity();
  const double lg = base == ExplorationLog::Natural ? std::log(static_cast<double>(parent_visits))
                                                    : std::log2(static_cast<double>(parent_visits));
  return mean + cp * std::sqrt(2.0 * lg / static_cast<double>(visits));
}

struct MctsNode {
  Pose pose;
  SensingAction action;  // from parent; unused at the root
  Budget remaining = 0;
  double mean_reward = 0.0;
  long visits = 0;
  int parent = -1;
  std::vector<int> children;
  std::vector<SensingAction> untried;
};

struct MctsTree {
  std::vector<MctsNode> nodes;
  const MctsNode& root() const { return nodes.front(); }
};

// Normalized reward of imagining `path` from (pose, remaining) followed by
// a random continuation to budget exhaustion.
inline double rollout(BeliefState snapshot, Pose pose, Budget remaining,
                      std::span<const SensingAction> path, double h_init, const KnowledgeNet& net,
                      const PlanningModel& model, Rng& rng) {
  double gain = 0.0;
  const CostModel& costs = model.rules.costs;
  for (const auto& a : path) {
    gain += simulate_step(snapshot, pose, a, net, model, rng);
    remaining -= cost(a, costs);
  }
  while (true) {
    const auto legal = legal_actions(pose, remaining, costs, model.occupancy);
    if (legal.empty()) break;
    const SensingAction a = legal[rng.uniform_index(legal.size())];
    gain += simulate_step(snapshot, pose, a, net, model, rng);
    remaining -= cost(a, costs);
  }
  if (!(h_init > 0.0)) return 0.0;
  return std::clamp(gain / h_init, 0.0, 1.0);
}

namespace detail {

inline int select_ucb_child(const MctsTree& tree, int index, const PlannerConfig& cfg) {
  const MctsNode& node = tree.nodes[index];
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int c : node.children) {
    const MctsNode& child = tree.nodes[c];
    const double score = ucb(child.mean_reward, node.visits, child.visits, cfg.cp, cfg.log_base);
    if (best < 0 || score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

// Highest mean reward, then most visits, then enumeration order.
inline int best_root_child(const MctsTree& tree) {
  int best = -1;
  for (int c : tree.root().children) {
    if (best < 0) {
      best = c;
      continue;
    }
    const MctsNode& a = tree.nodes[c];
    const MctsNode& b = tree.nodes[best];
    if (a.mean_reward != b.mean_reward) {
      if (a.mean_reward > b.mean_reward) best = c;
    } else if (a.visits != b.visits) {
      if (a.visits > b.visits) best = c;
    } else if (action_index(a.action) < action_index(b.action)) {
      best = c;
    }
  }
  return best;
}

}  // namespace detail

inline SensingAction mcts_plan(const PlanningContext& ctx, const PlannerConfig& cfg, Rng& rng,
                               MctsTree* tree_out = nullptr) {
  cfg.validate();
  const CostModel& costs = ctx.model.rules.costs;
  MctsTree tree;
  MctsNode root;
  root.pose = ctx.pose;
  root.remaining = ctx.remaining;
  root.untried = ctx.legal();
  if (root.untried.empty()) throw TerminalState("no legal action fits the remaining budget");
  tree.nodes.push_back(std::move(root));

  const double h_init = joint_l_entropy(ctx.belief);
  std::vector<SensingAction> path;
  for (int it = 0; it < cfg.iterations; ++it) {
    int index = 0;
    while (tree.nodes[index].untried.empty() && !tree.nodes[index].children.empty()) {
      index = detail::select_ucb_child(tree, index, cfg);
    }
    if (!tree.nodes[index].untried.empty()) {
      auto& untried = tree.nodes[index].untried;
      const std::size_t k = rng.uniform_index(untried.size());
      const SensingAction a = untried[k];
      untried.erase(untried.begin() + static_cast<std::ptrdiff_t>(k));
      MctsNode child;
      child.action = a;
      child.pose = apply_move(tree.nodes[index].pose, a.move, ctx.model.occupancy);
      child.remaining = tree.nodes[index].remaining - cost(a, costs);
      child.parent = index;
      child.untried = legal_actions(child.pose, child.remaining, costs, ctx.model.occupancy);
      tree.nodes.push_back(std::move(child));
      const int child_index = static_cast<int>(tree.nodes.size()) - 1;
      tree.nodes[index].children.push_back(child_index);
      index = child_index;
    }

    path.clear();
    for (int n = index; n > 0; n = tree.nodes[n].parent) path.push_back(tree.nodes[n].action);
    std::reverse(path.begin(), path.end());
    const double reward =
        rollout(ctx.belief, ctx.pose, ctx.remaining, path, h_init, ctx.net, ctx.model, rng);

    for (int n = index; n >= 0; n = tree.nodes[n].parent) {
      MctsNode& node = tree.nodes[n];
      ++node.visits;
      node.mean_reward += (reward - node.mean_reward) / static_cast<double>(node.visits);
    }
  }

  const SensingAction chosen = tree.nodes[detail::best_root_child(tree)].action;
  if (tree_out != nullptr) *tree_out = std::move(tree);
  return chosen;
}

class MctsPlanner : public Policy {
 public:
  explicit MctsPlanner(PlannerConfig cfg, std::string label = "mcts")
      : cfg_(cfg), label_(std::move(label)) {
    cfg_.validate();
  }

  std::string name() const override { return label_; }

  SensingAction plan(const PlanningContext& ctx, Rng& rng) override {
    const auto start = std::chrono::steady_clock::now();
    const SensingAction a = mcts_plan(ctx, cfg_, rng);
    seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    iterations_ += cfg_.iterations;
    return a;
  }

  void reset() override {
    seconds_ = 0.0;
    iterations_ = 0;
  }

  const PlannerConfig& config() const { return cfg_; }
  // Search time since the last reset.
  double search_seconds() const { return seconds_; }
  long search_iterations() const { return iterations_; }

 private:
  PlannerConfig cfg_;
  std::string label_;
  double seconds_ = 0.0;
  long iterations_ = 0;
};

}  // namespace sciplan
