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

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "sciplan/belief.hpp"
#include "sciplan/grid.hpp"
#include "sciplan/knowledge_net.hpp"
#include "sciplan/rng.hpp"

namespace sciplan {

// Expected number of rocks per fully unsearched L cell.
struct RockDensityPrior {
  double rate_per_l_cell = 1.0;
};

namespace detail {

inline std::vector<int> sample_readings(std::size_t r, const KnowledgeNet& net, Rng& rng) {
  std::vector<int> z(net.channels());
  for (std::size_t c = 0; c < net.channels(); ++c) {
    const std::size_t f = rng.categorical(net.p_f_given_r[c].row(r).probs());
    z[c] = static_cast<int>(rng.categorical(net.p_z_given_f[c].row(f).probs()));
  }
  return z;
}

}  // namespace detail

// Draws an observation the belief considers plausible for the target.
//
// Local: the stored reading if this cell was already read, else L from the
// cell's belief and B ~ P(B|L).
// Remote: every detected rock inside the footprint is read again with R
// from its posterior, F from P(F|R) times its feature likelihood, and
// Z ~ P(Z|F). For each L cell the footprint touches, its unsearched rock
// cells hold Poisson(rate * unsearched / cells_per_L) new rocks (at most
// one per rock cell) whose cell shares one L draw; R, F and Z follow the
// network. New rocks get consecutive synthetic ids.
inline Observation sample_observation(const BeliefState& belief, const SensingTarget& target,
                                      const KnowledgeNet& net, const RockDensityPrior& density,
                                      Rng& rng) {
  const GridGeometry& geo = belief.geometry();
  if (target.sensor == SensorKind::Local) {
    if (auto known = belief.b_evidence(target.cell)) return LocalObservation{target.cell, *known};
    const std::size_t l = rng.categorical(belief.l_probs(target.cell));
    const auto b = rng.categorical(net.p_b_given_l.row(l).probs());
    return LocalObservation{target.cell, static_cast<int>(b)};
  }

  RemoteObservation obs;
  obs.footprint = target.footprint;

  for (const auto& rock : belief.rocks()) {
    if (!target.footprint.contains(geo, rock.cell)) continue;
    const Categorical r_post = belief.rock_belief(rock.id, net);
    const std::size_t r = rng.categorical(r_post.probs());
    std::vector<int> z(net.channels());
    std::vector<double> w(net.card.f);
    for (std::size_t c = 0; c < net.channels(); ++c) {
      for (std::size_t f = 0; f < net.card.f; ++f) {
        w[f] = net.p_f_given_r[c](r, f) * rock.f_likelihood[c * net.card.f + f];
      }
      const std::size_t f = rng.categorical(w);
      z[c] = static_cast<int>(rng.categorical(net.p_z_given_f[c].row(f).probs()));
    }
    obs.rocks.push_back({rock.id, rock.cell, std::move(z)});
  }

  // Unsearched rock cells grouped by L cell, in L-index order.
  std::map<std::size_t, std::vector<RockCell>> unseen;
  for (RockCell c : target.footprint.cells()) {
    if (!belief.seen(c)) unseen[geo.index(geo.parent(c))].push_back(c);
  }
  RockId next_id = belief.next_synthetic_id();
  const double per_cell = static_cast<double>(geo.rock_cells_per_l());
  for (auto& [l_index, cells] : unseen) {
    const double rate = density.rate_per_l_cell * static_cast<double>(cells.size()) / per_cell;
    const std::size_t count =
        std::min<std::size_t>(static_cast<std::size_t>(rng.poisson(rate)), cells.size());
    if (count == 0) continue;
    const std::size_t l = rng.categorical(belief.l_probs(l_index));
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + rng.uniform_index(cells.size() - i);
      std::swap(cells[i], cells[j]);
      const std::size_t r = rng.categorical(net.p_r_given_l.row(l).probs());
      obs.rocks.push_back({next_id++, cells[i], detail::sample_readings(r, net, rng)});
    }
  }
  return obs;
}

}  // namespace sciplan
