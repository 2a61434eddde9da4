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

// Per-cell belief over the location class L, the local reading B, and the
// class R of every detected rock.
//
// Evidence from a rock or a B reading reaches the L cells around it by
// log-linear pooling: the likelihood message m(L) is raised to the cell's
// normalized Gaussian weight w_k before multiplying into L_k. With radius 0
// this is exactly Bayes' rule on the per-cell tree, and because every
// update is a product of per-cell factors the result does not depend on
// the order in which observations arrive.
//
// Each rock keeps per-channel likelihoods over its features F (the product
// of P(z|F) over all its readings) rather than a reading history, so
// repeated looks at the same rock are combined exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sciplan/categorical.hpp"
#include "sciplan/errors.hpp"
#include "sciplan/grid.hpp"
#include "sciplan/knowledge_net.hpp"

namespace sciplan {

using RockId = std::int64_t;

// Ids at or above this are rocks invented while simulating observations.
inline constexpr RockId kFirstSyntheticRock = RockId{1} << 40;

struct RockReading {
  RockId id = 0;
  RockCell cell;
  std::vector<int> z;  // one reading per feature channel
};

struct RemoteObservation {
  Footprint footprint;  // marked as searched; rocks outside it are unaffected
  std::vector<RockReading> rocks;
};

struct LocalObservation {
  LCell cell;
  int b = 0;
};

using Observation = std::variant<RemoteObservation, LocalObservation>;

struct RockEvidence {
  RockId id = 0;
  RockCell cell;
  std::vector<double> f_likelihood;  // channels x |F|, each channel scaled to sum 1
};

class BeliefState {
 public:
  BeliefState() = default;

  // Uniform over L and B everywhere; nothing searched, no rocks.
  BeliefState(const GridGeometry& geo, const Cardinalities& card)
      : geo_(geo),
        l_card_(card.l),
        b_card_(card.b),
        l_(geo.l_cells() * card.l, 1.0 / static_cast<double>(card.l)),
        b_(geo.l_cells() * card.b, 1.0 / static_cast<double>(card.b)),
        b_evidence_(geo.l_cells(), -1),
        seen_(geo.rock_cells(), false) {
    if (geo.l_width <= 0 || geo.l_height <= 0 || geo.scale <= 0) {
      throw ConfigError("belief grid must be non-empty");
    }
  }

  const GridGeometry& geometry() const { return geo_; }
  std::size_t l_cardinality() const { return l_card_; }
  std::size_t b_cardinality() const { return b_card_; }

  std::span<const double> l_probs(std::size_t cell) const {
    return {l_.data() + cell * l_card_, l_card_};
  }
  std::span<const double> l_probs(LCell c) const {
    geo_.check(c);
    return l_probs(geo_.index(c));
  }
  Categorical l_belief(LCell c) const {
    auto p = l_probs(c);
    return Categorical({p.begin(), p.end()});
  }
  Categorical b_belief(LCell c) const {
    geo_.check(c);
    const double* p = b_.data() + geo_.index(c) * b_card_;
    return Categorical({p, p + b_card_});
  }
  std::optional<int> b_evidence(LCell c) const {
    geo_.check(c);
    const int v = b_evidence_[geo_.index(c)];
    return v < 0 ? std::nullopt : std::optional<int>(v);
  }

  void set_l_belief(LCell c, const Categorical& d) {
    geo_.check(c);
    if (d.size() != l_card_) throw InvalidDistribution("L belief has wrong cardinality");
    std::copy(d.probs().begin(), d.probs().end(), l_.begin() + geo_.index(c) * l_card_);
  }

  bool seen(RockCell c) const { return geo_.contains(c) && seen_[geo_.index(c)]; }

  // Detected rocks, sorted by id.
  const std::vector<RockEvidence>& rocks() const { return rocks_; }

  const RockEvidence* find_rock(RockId id) const {
    auto it = std::lower_bound(rocks_.begin(), rocks_.end(), id,
                               [](const RockEvidence& r, RockId v) { return r.id < v; });
    return it != rocks_.end() && it->id == id ? &*it : nullptr;
  }

  RockId next_synthetic_id() const { return next_synthetic_; }

  // Likelihood of everything seen on the rock, as a function of its class R.
  static std::vector<double> rock_r_likelihood(const RockEvidence& rock, const KnowledgeNet& net) {
    const std::size_t nf = net.card.f;
    std::vector<double> lam(net.card.r, 1.0);
    for (std::size_t c = 0; c < net.channels(); ++c) {
      const Cpt& f_given_r = net.p_f_given_r[c];
      for (std::size_t r = 0; r < net.card.r; ++r) {
        double s = 0.0;
        for (std::size_t f = 0; f < nf; ++f) s += f_given_r(r, f) * rock.f_likelihood[c * nf + f];
        lam[r] *= s;
      }
    }
    scale_to_max(lam);
    return lam;
  }

  // Posterior over the class of a detected rock. The rock's own message is
  // divided back out of its cell's L belief before predicting R, so the
  // rock's evidence is counted once.
  Categorical rock_belief(RockId id, const KnowledgeNet& net) const {
    const RockEvidence* rock = find_rock(id);
    if (rock == nullptr) throw std::out_of_range("unknown rock id " + std::to_string(id));
    const auto lam = rock_r_likelihood(*rock, net);
    const LCell cell = geo_.parent(rock->cell);
    const double w = net.coupling.self_weight(geo_, cell);
    const auto bel = l_probs(geo_.index(cell));
    std::vector<double> cavity(l_card_);
    for (std::size_t l = 0; l < l_card_; ++l) {
      double m = 0.0;
      for (std::size_t r = 0; r < net.card.r; ++r) m += net.p_r_given_l(l, r) * lam[r];
      cavity[l] = bel[l] / std::pow(std::max(m, kProbabilityFloor), w);
    }
    std::vector<double> post(net.card.r, 0.0);
    for (std::size_t r = 0; r < net.card.r; ++r) {
      double prior = 0.0;
      for (std::size_t l = 0; l < l_card_; ++l) prior += cavity[l] * net.p_r_given_l(l, r);
      post[r] = prior * lam[r];
    }
    floor_and_normalize(post);
    return Categorical(std::move(post));
  }

  // In-place updates. Each returns the drop in summed L entropy (bits).
  double apply(const RemoteObservation& obs, const KnowledgeNet& net) {
    for (const auto& reading : obs.rocks) {
      geo_.check(reading.cell);
      if (reading.z.size() != net.channels()) {
        throw std::invalid_argument("rock reading has " + std::to_string(reading.z.size()) +
                                    " channels, net has " + std::to_string(net.channels()));
      }
      for (int z : reading.z) {
        if (z < 0 || static_cast<std::size_t>(z) >= net.card.z) {
          throw std::invalid_argument("Z value out of range");
        }
      }
    }
    for (RockCell c : obs.footprint.cells()) {
      geo_.check(c);
      seen_[geo_.index(c)] = true;
    }

    const std::size_t nf = net.card.f;
    double gain = 0.0;
    std::vector<double> msg(l_card_);
    for (const auto& reading : obs.rocks) {
      RockEvidence& rock = find_or_insert(reading, net);
      const auto old_lam = rock_r_likelihood(rock, net);
      for (std::size_t c = 0; c < net.channels(); ++c) {
        std::span<double> fl(rock.f_likelihood.data() + c * nf, nf);
        for (std::size_t f = 0; f < nf; ++f) fl[f] *= net.p_z_given_f[c](f, reading.z[c]);
        floor_and_normalize(fl);
      }
      const auto new_lam = rock_r_likelihood(rock, net);
      for (std::size_t l = 0; l < l_card_; ++l) {
        double num = 0.0, den = 0.0;
        for (std::size_t r = 0; r < net.card.r; ++r) {
          num += net.p_r_given_l(l, r) * new_lam[r];
          den += net.p_r_given_l(l, r) * old_lam[r];
        }
        msg[l] = std::max(num, kProbabilityFloor) / std::max(den, kProbabilityFloor);
      }
      gain += pool_into_neighbourhood(geo_.parent(rock.cell), msg, net.coupling);
      if (reading.id >= next_synthetic_) next_synthetic_ = reading.id + 1;
    }
    return gain;
  }

  double apply(const LocalObservation& obs, const KnowledgeNet& net) {
    geo_.check(obs.cell);
    if (obs.b < 0 || static_cast<std::size_t>(obs.b) >= b_card_) {
      throw std::invalid_argument("B value out of range");
    }
    const std::size_t idx = geo_.index(obs.cell);
    const int previous = b_evidence_[idx];
    double* b = b_.data() + idx * b_card_;
    std::fill(b, b + b_card_, 0.0);
    b[obs.b] = 1.0;
    floor_and_normalize({b, b_card_});
    b_evidence_[idx] = obs.b;
    if (previous == obs.b) return 0.0;

    // A new reading replaces the previous one at this cell.
    std::vector<double> msg(l_card_);
    for (std::size_t l = 0; l < l_card_; ++l) {
      const double num = std::max(net.p_b_given_l(l, obs.b), kProbabilityFloor);
      const double den =
          previous < 0 ? 1.0 : std::max(net.p_b_given_l(l, previous), kProbabilityFloor);
      msg[l] = num / den;
    }
    return pool_into_neighbourhood(obs.cell, msg, net.coupling);
  }

  double apply(const Observation& obs, const KnowledgeNet& net) {
    return std::visit([&](const auto& o) { return apply(o, net); }, obs);
  }

 private:
  static void scale_to_max(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (m > 0.0) {
      for (double& x : v) x /= m;
    }
  }

  RockEvidence& find_or_insert(const RockReading& reading, const KnowledgeNet& net) {
    auto it = std::lower_bound(rocks_.begin(), rocks_.end(), reading.id,
                               [](const RockEvidence& r, RockId v) { return r.id < v; });
    if (it != rocks_.end() && it->id == reading.id) return *it;
    const double flat = 1.0 / static_cast<double>(net.card.f);
    RockEvidence fresh{reading.id, reading.cell,
                       std::vector<double>(net.channels() * net.card.f, flat)};
    return *rocks_.insert(it, std::move(fresh));
  }

  double pool_into_neighbourhood(LCell center, std::span<const double> msg,
                                 const SpatialCoupling& coupling) {
    const double top = *std::max_element(msg.begin(), msg.end());
    double gain = 0.0;
    for (const auto& w : coupling.weights(geo_, center)) {
      std::span<double> p(l_.data() + w.cell * l_card_, l_card_);
      const double before = entropy_bits(p);
      for (std::size_t l = 0; l < l_card_; ++l) {
        p[l] *= std::pow(std::max(msg[l] / top, kProbabilityFloor), w.weight);
      }
      floor_and_normalize(p);
      gain += before - entropy_bits(p);
    }
    return gain;
  }

  GridGeometry geo_;
  std::size_t l_card_ = 0;
  std::size_t b_card_ = 0;
  std::vector<double> l_;
  std::vector<double> b_;
  std::vector<std::int8_t> b_evidence_;
  std::vector<bool> seen_;
  std::vector<RockEvidence> rocks_;
  RockId next_synthetic_ = kFirstSyntheticRock;
};

inline BeliefState initial_belief(const GridGeometry& geo, const KnowledgeNet& net) {
  return BeliefState(geo, net.card);
}

inline BeliefState update_remote(BeliefState belief, const RemoteObservation& obs,
                                 const KnowledgeNet& net) {
  belief.apply(obs, net);
  return belief;
}

inline BeliefState update_local(BeliefState belief, const LocalObservation& obs,
                                const KnowledgeNet& net) {
  belief.apply(obs, net);
  return belief;
}

// Sum of per-cell L entropies (bits).
inline double joint_l_entropy(const BeliefState& belief) {
  double h = 0.0;
  for (std::size_t i = 0; i < belief.geometry().l_cells(); ++i) h += entropy_bits(belief.l_probs(i));
  return h;
}

}  // namespace sciplan
