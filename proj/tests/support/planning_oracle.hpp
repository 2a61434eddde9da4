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

// Exhaustive expectimax over (action, observation) trees for tiny worlds
// whose L cells each hold a single rock cell, so every possible reading
// can be listed with its exact probability.

#include <cmath>
#include <utility>
#include <vector>

#include "sciplan/sciplan.hpp"
#include "support/inference_oracle.hpp"

namespace sciplan::oracle {

struct Outcome {
  double p;
  Observation obs;
};

// Predictive distribution of z-vectors for a rock whose class has
// distribution pr and whose features have per-channel likelihoods flik
// (empty for an unseen rock).
inline std::vector<std::pair<std::vector<int>, double>> z_distribution(
    const KnowledgeNet& net, const std::vector<double>& pr, const std::vector<double>& flik) {
  std::vector<std::pair<std::vector<int>, double>> out;
  detail::for_each_assignment(net.channels(), net.card.z, [&](const std::vector<std::size_t>& z) {
    double total = 0.0;
    for (std::size_t r = 0; r < net.card.r; ++r) {
      double pz = pr[r];
      for (std::size_t c = 0; c < net.channels(); ++c) {
        double num = 0.0, den = 0.0;
        for (std::size_t f = 0; f < net.card.f; ++f) {
          const double pf =
              net.p_f_given_r[c](r, f) * (flik.empty() ? 1.0 : flik[c * net.card.f + f]);
          num += pf * net.p_z_given_f[c](f, z[c]);
          den += pf;
        }
        pz *= num / den;
      }
      total += pz;
    }
    out.push_back({std::vector<int>(z.begin(), z.end()), total});
  });
  return out;
}

// Every observation sample_observation can return for the target, with its
// probability. Requires scale == 1.
inline std::vector<Outcome> enumerate_observations(const BeliefState& belief,
                                                   const SensingTarget& target,
                                                   const KnowledgeNet& net,
                                                   const RockDensityPrior& density) {
  const GridGeometry& geo = belief.geometry();
  if (geo.scale != 1) throw std::logic_error("enumerate_observations needs scale 1");
  if (target.sensor == SensorKind::Local) {
    if (auto b = belief.b_evidence(target.cell)) return {{1.0, LocalObservation{target.cell, *b}}};
    std::vector<Outcome> out;
    const auto bel = belief.l_probs(target.cell);
    for (std::size_t b = 0; b < net.card.b; ++b) {
      double p = 0.0;
      for (std::size_t l = 0; l < net.card.l; ++l) p += bel[l] * net.p_b_given_l(l, b);
      out.push_back({p, LocalObservation{target.cell, static_cast<int>(b)}});
    }
    return out;
  }

  // Independent pieces, combined by cartesian product below.
  struct Piece {
    std::vector<std::pair<double, std::vector<RockReading>>> options;
  };
  std::vector<Piece> pieces;
  for (const auto& rock : belief.rocks()) {
    if (!target.footprint.contains(geo, rock.cell)) continue;
    const auto pr = belief.rock_belief(rock.id, net);
    Piece piece;
    for (auto& [z, p] : z_distribution(net, pr.vector(), rock.f_likelihood)) {
      piece.options.push_back({p, {{rock.id, rock.cell, z}}});
    }
    pieces.push_back(std::move(piece));
  }
  for (RockCell c : target.footprint.cells()) {
    if (belief.seen(c)) continue;
    const double p_none = std::exp(-density.rate_per_l_cell);
    const auto bel = belief.l_probs(geo.parent(c));
    std::vector<double> pr(net.card.r, 0.0);
    for (std::size_t l = 0; l < net.card.l; ++l) {
      for (std::size_t r = 0; r < net.card.r; ++r) pr[r] += bel[l] * net.p_r_given_l(l, r);
    }
    Piece piece;
    piece.options.push_back({p_none, {}});
    // New rocks carry id -1 until the outcome is assembled.
    for (auto& [z, p] : z_distribution(net, pr, {})) {
      piece.options.push_back({(1.0 - p_none) * p, {{-1, c, z}}});
    }
    pieces.push_back(std::move(piece));
  }

  std::vector<Outcome> out;
  std::vector<std::pair<double, std::vector<RockReading>>> partial = {{1.0, {}}};
  for (const auto& piece : pieces) {
    std::vector<std::pair<double, std::vector<RockReading>>> grown;
    for (const auto& [p0, rocks] : partial) {
      for (const auto& [p1, add] : piece.options) {
        auto merged = rocks;
        merged.insert(merged.end(), add.begin(), add.end());
        grown.push_back({p0 * p1, std::move(merged)});
      }
    }
    partial = std::move(grown);
  }
  for (auto& [p, rocks] : partial) {
    // Renumber new rocks consecutively in emission order.
    RockId id = belief.next_synthetic_id();
    for (auto& r : rocks) {
      if (r.id < 0) r.id = id++;
    }
    out.push_back({p, RemoteObservation{target.footprint, std::move(rocks)}});
  }
  return out;
}

struct ToyProblem {
  WorldConfig world;
  KnowledgeNet net;
  PlanningModel model;
  BeliefState belief;
  Pose pose;
  Budget budget = 2;
};

// Expected total entropy drop of acting optimally with full feedback.
inline double expectimax_value(const BeliefState& belief, const Pose& pose, Budget remaining,
                               const KnowledgeNet& net, const PlanningModel& model);

inline double action_value(const BeliefState& belief, const Pose& pose, Budget remaining,
                           const SensingAction& a, const KnowledgeNet& net,
                           const PlanningModel& model) {
  const Pose next = apply_move(pose, a.move, model.occupancy);
  const Budget left = remaining - cost(a, model.rules.costs);
  if (!model.rules.fires(a)) return expectimax_value(belief, next, left, net, model);
  const SensingTarget target = make_target(model.geometry, model.fov, next, a.sensor);
  double v = 0.0;
  for (const auto& o : enumerate_observations(belief, target, net, model.density)) {
    if (o.p == 0.0) continue;
    BeliefState b = belief;
    const double g = b.apply(o.obs, net);
    v += o.p * (g + expectimax_value(b, next, left, net, model));
  }
  return v;
}

inline double expectimax_value(const BeliefState& belief, const Pose& pose, Budget remaining,
                               const KnowledgeNet& net, const PlanningModel& model) {
  double best = 0.0;
  bool any = false;
  for (const auto& a : legal_actions(pose, remaining, model.rules.costs, model.occupancy)) {
    const double v = action_value(belief, pose, remaining, a, net, model);
    if (!any || v > best) best = v;
    any = true;
  }
  return best;
}

// Two L cells in a row, one rock cell each, binary variables, a 1x1 fov.
inline ToyProblem random_toy(std::uint64_t seed) {
  Rng rng(seed);
  ToyProblem t;
  t.world.l_width = 2;
  t.world.l_height = 1;
  t.world.region_width = 1;
  t.world.region_height = 1;
  t.world.rock_width = 2;
  t.world.rock_height = 1;
  t.world.fov = {1, 1};
  t.world.rock_density = 0.3 + 2.0 * rng.uniform();
  const GridGeometry geo = t.world.geometry();

  t.net.card = {2, 2, 2, 2, 2};
  t.net.p_r_given_l = random_cpt(2, 2, rng);
  t.net.p_b_given_l = random_cpt(2, 2, rng);
  t.net.p_f_given_r = {random_cpt(2, 2, rng)};
  t.net.p_z_given_f = {random_cpt(2, 2, rng)};
  t.net.coupling = SpatialCoupling(0.5 + rng.uniform(), static_cast<int>(rng.uniform_index(2)));
  t.net.validate();

  t.model.geometry = geo;
  t.model.fov = t.world.fov;
  t.model.occupancy = OccupancyMap::open(geo.l_width, geo.l_height);
  t.model.rules.costs = {1, 1 + static_cast<Budget>(rng.uniform_index(2))};
  t.model.density = {t.world.rock_density};

  t.belief = BeliefState(geo, t.net.card);
  for (int x = 0; x < 2; ++x) t.belief.set_l_belief({x, 0}, Categorical(random_row(2, rng)));
  t.pose = {static_cast<int>(rng.uniform_index(2)), 0,
            static_cast<Heading>(rng.uniform_index(kHeadings))};
  t.budget = 1 + static_cast<Budget>(rng.uniform_index(2));
  return t;
}

}  // namespace sciplan::oracle
