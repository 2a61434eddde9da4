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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sciplan/errors.hpp"

namespace sciplan {

inline constexpr double kNormTolerance = 1e-9;

// Probabilities below this are raised to it before renormalizing, so that
// repeated pooled updates never produce absorbing zeros.
inline constexpr double kProbabilityFloor = 1e-12;

// Shannon entropy in bits of a probability vector; 0 log 0 := 0.
inline double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

// Floors every entry at kProbabilityFloor and rescales to sum 1.
inline void floor_and_normalize(std::span<double> p) {
  double total = 0.0;
  for (double& v : p) {
    if (!(v >= kProbabilityFloor)) v = kProbabilityFloor;
    total += v;
  }
  for (double& v : p) v /= total;
}

class Categorical {
 public:
  Categorical() = default;

  // Throws InvalidDistribution unless probs has K >= 2 non-negative
  // entries summing to 1 within kNormTolerance.
  explicit Categorical(std::vector<double> probs) : probs_(std::move(probs)) { validate(); }

  static Categorical uniform(std::size_t k) {
    return Categorical(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }

  static Categorical one_hot(std::size_t k, std::size_t index) {
    std::vector<double> p(k, 0.0);
    p.at(index) = 1.0;
    return Categorical(std::move(p));
  }

  // Normalizes non-negative weights with a positive sum.
  static Categorical from_weights(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw InvalidDistribution("negative or NaN weight");
      total += w;
    }
    if (!(total > 0.0)) throw InvalidDistribution("weights sum to zero");
    for (double& w : weights) w /= total;
    return Categorical(std::move(weights));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<double>& vector() const { return probs_; }

  friend bool operator==(const Categorical&, const Categorical&) = default;

 private:
  void validate() const {
    if (probs_.size() < 2) throw InvalidDistribution("categorical needs at least 2 classes");
    double total = 0.0;
    for (double v : probs_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidDistribution("categorical entry is negative or not finite");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
      throw InvalidDistribution("categorical sums to " + std::to_string(total));
    }
  }

  std::vector<double> probs_;
};

// Result lies in [0, log2 K].
inline double entropy(const Categorical& dist) { return entropy_bits(dist.probs()); }

// Conditional probability table: one Categorical over the child per parent class.
class Cpt {
 public:
  Cpt() = default;

  explicit Cpt(std::vector<Categorical> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw InvalidDistribution("CPT has no rows");
    const std::size_t k = rows_.front().size();
    for (const auto& r : rows_) {
      if (r.size() != k) throw InvalidDistribution("CPT rows differ in cardinality");
    }
  }

  explicit Cpt(const std::vector<std::vector<double>>& table) : Cpt(to_rows(table)) {}

  // K x K table with `diag` on the diagonal and the remainder spread evenly.
  static Cpt diagonal(std::size_t k, double diag) {
    std::vector<Categorical> rows;
    const double off = (1.0 - diag) / static_cast<double>(k - 1);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> p(k, off);
      p[i] = diag;
      rows.emplace_back(std::move(p));
    }
    return Cpt(std::move(rows));
  }

  static Cpt identity(std::size_t k) { return diagonal(k, 1.0); }

  static Cpt uniform(std::size_t parents, std::size_t children) {
    return Cpt(std::vector<Categorical>(parents, Categorical::uniform(children)));
  }

  std::size_t parents() const { return rows_.size(); }
  std::size_t children() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const Categorical& row(std::size_t parent) const { return rows_.at(parent); }
  double operator()(std::size_t parent, std::size_t child) const { return rows_[parent][child]; }
  const std::vector<Categorical>& rows() const { return rows_; }

  std::vector<std::vector<double>> table() const {
    std::vector<std::vector<double>> t;
    for (const auto& r : rows_) t.push_back(r.vector());
    return t;
  }

  friend bool operator==(const Cpt&, const Cpt&) = default;

 private:
  static std::vector<Categorical> to_rows(const std::vector<std::vector<double>>& table) {
    std::vector<Categorical> rows;
    rows.reserve(table.size());
    for (const auto& r : table) rows.emplace_back(r);
    return rows;
  }

  std::vector<Categorical> rows_;
};

}  // namespace sciplan
