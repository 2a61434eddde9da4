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

#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sciplan/categorical.hpp"
#include "sciplan/errors.hpp"
#include "sciplan/grid.hpp"

namespace sciplan {

struct CellWeight {
  std::size_t cell;  // L-grid index
  double weight;
};

// Gaussian influence of an observation on the L cells around it.
// Cells within Euclidean distance `radius` (in L cells) get weight
// exp(-d^2 / (2 sigma^2)), renormalized over the cells that lie on the grid.
class SpatialCoupling {
 public:
  SpatialCoupling() : SpatialCoupling(1.0, 2) {}

  SpatialCoupling(double sigma, int radius) : sigma_(sigma), radius_(radius) {
    if (!(sigma > 0.0)) throw ConfigError("coupling sigma must be > 0");
    if (radius < 0) throw ConfigError("coupling radius must be >= 0");
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        const int d2 = dx * dx + dy * dy;
        if (d2 > radius * radius) continue;
        stencil_.push_back({dx, dy, std::exp(-d2 / (2.0 * sigma * sigma))});
      }
    }
  }

  double sigma() const { return sigma_; }
  int radius() const { return radius_; }

  std::vector<CellWeight> weights(const GridGeometry& geo, LCell center) const {
    geo.check(center);
    std::vector<CellWeight> out;
    out.reserve(stencil_.size());
    double total = 0.0;
    for (const auto& s : stencil_) {
      const LCell c{center.x + s.dx, center.y + s.dy};
      if (!geo.contains(c)) continue;
      out.push_back({geo.index(c), s.raw});
      total += s.raw;
    }
    for (auto& w : out) w.weight /= total;
    return out;
  }

  // Normalized weight the center cell receives from its own observation.
  double self_weight(const GridGeometry& geo, LCell center) const {
    const std::size_t idx = geo.index(center);
    for (const auto& w : weights(geo, center)) {
      if (w.cell == idx) return w.weight;
    }
    return 1.0;
  }

  friend bool operator==(const SpatialCoupling& a, const SpatialCoupling& b) {
    return a.sigma_ == b.sigma_ && a.radius_ == b.radius_;
  }

 private:
  struct Offset {
    int dx;
    int dy;
    double raw;
  };

  double sigma_;
  int radius_;
  std::vector<Offset> stencil_;
};

struct Cardinalities {
  std::size_t l = 3;
  std::size_t r = 3;
  std::size_t f = 3;
  std::size_t z = 3;
  std::size_t b = 3;
  friend bool operator==(const Cardinalities&, const Cardinalities&) = default;
};

// The per-cell network L -> R -> F_c -> Z_c (one F/Z pair per feature
// channel c) and L -> B, plus the spatial coupling of R and B evidence
// onto neighbouring L cells.
struct KnowledgeNet {
  Cardinalities card;
  Cpt p_r_given_l;
  Cpt p_b_given_l;
  std::vector<Cpt> p_f_given_r;  // one per feature channel
  std::vector<Cpt> p_z_given_f;  // one per feature channel
  SpatialCoupling coupling;

  std::size_t channels() const { return p_f_given_r.size(); }

  void validate() const {
    auto expect = [](const Cpt& t, std::size_t parents, std::size_t children, const char* what) {
      if (t.parents() != parents || t.children() != children) {
        throw ConfigError(std::string("CPT ") + what + " has shape " +
                          std::to_string(t.parents()) + "x" + std::to_string(t.children()) +
                          ", expected " + std::to_string(parents) + "x" +
                          std::to_string(children));
      }
    };
    if (card.l < 2 || card.r < 2 || card.f < 2 || card.z < 2 || card.b < 2) {
      throw ConfigError("every cardinality must be >= 2");
    }
    expect(p_r_given_l, card.l, card.r, "P(R|L)");
    expect(p_b_given_l, card.l, card.b, "P(B|L)");
    if (p_f_given_r.empty()) throw ConfigError("at least one feature channel is required");
    if (p_f_given_r.size() != p_z_given_f.size()) {
      throw ConfigError("P(F|R) and P(Z|F) channel counts differ");
    }
    for (const auto& t : p_f_given_r) expect(t, card.r, card.f, "P(F|R)");
    for (const auto& t : p_z_given_f) expect(t, card.f, card.z, "P(Z|F)");
  }

  friend bool operator==(const KnowledgeNet&, const KnowledgeNet&) = default;
};

// Shipped prior: three classes everywhere, three feature channels, every
// CPT diagonal-dominant with rows (0.7, 0.15, 0.15), sigma 1, radius 2.
inline KnowledgeNet default_knowledge_net() {
  KnowledgeNet net;
  net.card = {3, 3, 3, 3, 3};
  net.p_r_given_l = Cpt::diagonal(3, 0.7);
  net.p_b_given_l = Cpt::diagonal(3, 0.7);
  for (int c = 0; c < 3; ++c) {
    net.p_f_given_r.push_back(Cpt::diagonal(3, 0.7));
    net.p_z_given_f.push_back(Cpt::diagonal(3, 0.7));
  }
  net.coupling = SpatialCoupling(1.0, 2);
  return net;
}

// ---- serialization -------------------------------------------------------
//
// {
//   "cardinalities": {"L": 3, "R": 3, "F": 3, "Z": 3, "B": 3},
//   "p_r_given_l": [[...], ...],          rows indexed by parent class
//   "p_b_given_l": [[...], ...],
//   "p_f_given_r": [[[...], ...], ...],   one matrix per feature channel
//   "p_z_given_f": [[[...], ...], ...],
//   "coupling": {"sigma": 1.0, "radius": 2}
// }

inline nlohmann::json to_json(const KnowledgeNet& net) {
  nlohmann::json j;
  j["cardinalities"] = {{"L", net.card.l}, {"R", net.card.r}, {"F", net.card.f},
                        {"Z", net.card.z}, {"B", net.card.b}};
  j["p_r_given_l"] = net.p_r_given_l.table();
  j["p_b_given_l"] = net.p_b_given_l.table();
  j["p_f_given_r"] = nlohmann::json::array();
  for (const auto& t : net.p_f_given_r) j["p_f_given_r"].push_back(t.table());
  j["p_z_given_f"] = nlohmann::json::array();
  for (const auto& t : net.p_z_given_f) j["p_z_given_f"].push_back(t.table());
  j["coupling"] = {{"sigma", net.coupling.sigma()}, {"radius", net.coupling.radius()}};
  return j;
}

inline KnowledgeNet knowledge_net_from_json(const nlohmann::json& j) {
  try {
    KnowledgeNet net;
    const auto& c = j.at("cardinalities");
    net.card = {c.at("L").get<std::size_t>(), c.at("R").get<std::size_t>(),
                c.at("F").get<std::size_t>(), c.at("Z").get<std::size_t>(),
                c.at("B").get<std::size_t>()};
    using Table = std::vector<std::vector<double>>;
    net.p_r_given_l = Cpt(j.at("p_r_given_l").get<Table>());
    net.p_b_given_l = Cpt(j.at("p_b_given_l").get<Table>());
    for (const auto& t : j.at("p_f_given_r")) net.p_f_given_r.emplace_back(t.get<Table>());
    for (const auto& t : j.at("p_z_given_f")) net.p_z_given_f.emplace_back(t.get<Table>());
    const auto& cp = j.at("coupling");
    net.coupling = SpatialCoupling(cp.at("sigma").get<double>(), cp.at("radius").get<int>());
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("knowledge net: ") + e.what());
  } catch (const InvalidDistribution& e) {
    throw ConfigError(std::string("knowledge net: ") + e.what());
  }
}

inline KnowledgeNet load_knowledge_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open knowledge net file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return knowledge_net_from_json(j);
}

inline void save_knowledge_net(const KnowledgeNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(net).dump(2) << '\n';
}

}  // namespace sciplan
