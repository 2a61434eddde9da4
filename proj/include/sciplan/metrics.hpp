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
#include <stdexcept>

#include "sciplan/belief.hpp"
#include "sciplan/world.hpp"

namespace sciplan {

// Entropy removed from the L marginals between two beliefs (bits).
inline double information_gain(const BeliefState& initial, const BeliefState& final_belief) {
  if (!(initial.geometry() == final_belief.geometry())) {
    throw std::invalid_argument("information_gain: beliefs cover different grids");
  }
  return joint_l_entropy(initial) - joint_l_entropy(final_belief);
}

// Probability mass the belief puts on the true L class, summed over cells.
inline double accuracy_score(const BeliefState& belief, const WorldState& truth) {
  const auto& geo = belief.geometry();
  if (geo.l_width != truth.geometry.l_width || geo.l_height != truth.geometry.l_height) {
    throw std::invalid_argument("accuracy_score: belief and world grids differ");
  }
  double score = 0.0;
  for (std::size_t i = 0; i < geo.l_cells(); ++i) score += belief.l_probs(i)[truth.l_truth[i]];
  return score;
}

}  // namespace sciplan
