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

// Policy x budget x trial matrix with deterministic seeding.
//
// Paired mode (default) evaluates every policy and budget on the same
// sequence of worlds, start poses and sensor-noise streams; unpaired mode
// draws fresh ones per cell.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sciplan/harness/mission.hpp"

namespace sciplan {

struct PolicySpec {
  std::string name;   // mcts, greedy, random, fixed
  std::string label;  // column label, e.g. MCTS-100
  PlannerConfig cfg;
};

struct BenchmarkConfig {
  WorldConfig world = WorldConfig::full_scale();
  KnowledgeNet net = default_knowledge_net();
  CostModel costs = CostModel::sim();
  bool sense_on_rotate = true;
  double density_prior = -1.0;  // negative: use world.rock_density
  std::vector<Budget> budgets = {50, 70, 100};
  std::vector<PolicySpec> policies;
  int trials = 50;
  std::uint64_t master_seed = 1;
  bool paired = true;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    world.geometry();
    net.validate();
    costs.validate();
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (budgets.empty() || policies.empty()) throw ConfigError("need at least one budget and policy");
    for (Budget b : budgets) {
      if (b <= 0) throw ConfigError("budgets must be > 0");
    }
    for (const auto& p : policies) {
      make_policy(p.name, p.cfg, p.label);
    }
  }

  RockDensityPrior density() const {
    return {density_prior >= 0.0 ? density_prior : world.rock_density};
  }
};

// Default comparison: random, fixed, greedy (20 samples), MCTS with 50
// and 100 iterations.
inline std::vector<PolicySpec> standard_policies() {
  PlannerConfig base;
  PlannerConfig m50 = base;
  m50.iterations = 50;
  PlannerConfig m100 = base;
  m100.iterations = 100;
  return {{"random", "Random", base},
          {"fixed", "Fixed", base},
          {"greedy", "Greedy", base},
          {"mcts", "MCTS-50", m50},
          {"mcts", "MCTS-100", m100}};
}

struct SummaryCell {
  std::string policy;
  Budget budget = 0;
  int n = 0;
  double mean_gain = 0.0;
  double sd_gain = 0.0;
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;
};

struct BenchmarkResult {
  std::vector<TrialResult> trials;  // ordered by (policy, budget, trial)
  std::vector<SummaryCell> summary; // ordered by (policy, budget)

  std::vector<const TrialResult*> cell(const std::string& policy, Budget budget) const {
    std::vector<const TrialResult*> out;
    for (const auto& t : trials) {
      if (t.policy == policy && t.budget == budget) out.push_back(&t);
    }
    return out;
  }

  // Mean wall time of one MCTS iteration per policy label (seconds).
  std::vector<std::pair<std::string, double>> seconds_per_iteration() const {
    std::vector<std::pair<std::string, double>> out;
    std::vector<std::string> labels;
    for (const auto& t : trials) {
      if (t.planner_iterations > 0 &&
          std::find(labels.begin(), labels.end(), t.policy) == labels.end()) {
        labels.push_back(t.policy);
      }
    }
    for (const auto& label : labels) {
      double s = 0.0;
      long n = 0;
      for (const auto& t : trials) {
        if (t.policy == label) {
          s += t.planner_seconds;
          n += t.planner_iterations;
        }
      }
      out.emplace_back(label, s / static_cast<double>(n));
    }
    return out;
  }
};

inline std::pair<double, double> mean_sd(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

inline BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  struct Job {
    std::size_t policy;
    std::size_t budget;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
      for (int t = 0; t < cfg.trials; ++t) jobs.push_back({p, b, t});
    }
  }

  const ActionRules rules{cfg.costs, cfg.sense_on_rotate};
  const RockDensityPrior density = cfg.density();
  const std::uint64_t m = cfg.master_seed;

  // Paired worlds are generated once and shared read-only.
  std::vector<WorldState> paired_worlds;
  if (cfg.paired) {
    for (int t = 0; t < cfg.trials; ++t) {
      WorldConfig wc = cfg.world;
      wc.seed = derive_seed(m, {0, static_cast<std::uint64_t>(t)});
      paired_worlds.push_back(generate(wc, cfg.net));
    }
  }

  BenchmarkResult result;
  result.trials.resize(jobs.size());
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const auto t = static_cast<std::uint64_t>(job.trial);
    std::uint64_t world_seed, start_seed, mission_seed;
    if (cfg.paired) {
      world_seed = derive_seed(m, {0, t});
      start_seed = derive_seed(m, {1, t});
      mission_seed = derive_seed(m, {2, t});
    } else {
      world_seed = derive_seed(m, {0, t, job.policy + 1, job.budget + 1});
      start_seed = derive_seed(m, {1, t, job.policy + 1, job.budget + 1});
      mission_seed = derive_seed(m, {2, t, job.policy + 1, job.budget + 1});
    }
    WorldState own_world;
    if (!cfg.paired) {
      WorldConfig wc = cfg.world;
      wc.seed = world_seed;
      own_world = generate(wc, cfg.net);
    }
    const WorldState& world = cfg.paired ? paired_worlds[job.trial] : own_world;

    const PolicySpec& spec = cfg.policies[job.policy];
    auto policy = make_policy(spec.name, spec.cfg, spec.label);
    MissionSetup setup;
    setup.budget = cfg.budgets[job.budget];
    setup.start = random_start(world, start_seed);
    setup.rules = rules;
    setup.density = density;
    setup.mission_seed = mission_seed;
    setup.planner_seed = derive_seed(m, {3, t, job.policy + 1, job.budget + 1, spec.cfg.seed});
    TrialResult r = run_mission(world, cfg.net, *policy, setup);
    r.trial = job.trial;
    r.policy = spec.label.empty() ? policy->name() : spec.label;
    r.world_seed = world_seed;
    result.trials[j] = std::move(r);
  };

  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
          try {
            run_job(j);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
      std::vector<double> gains, accs;
      std::string label;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].policy != p || jobs[j].budget != b) continue;
        gains.push_back(result.trials[j].information_gain);
        accs.push_back(result.trials[j].accuracy_score);
        label = result.trials[j].policy;
      }
      const auto [mg, sg] = mean_sd(gains);
      const auto [ma, sa] = mean_sd(accs);
      result.summary.push_back(
          {label, cfg.budgets[b], static_cast<int>(gains.size()), mg, sg, ma, sa});
    }
  }
  return result;
}

// ---- output --------------------------------------------------------------

namespace detail {
inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace detail

// One row per trial. Contains no timing so repeated runs are byte-identical.
inline void write_trials_csv(const BenchmarkResult& r, std::ostream& out) {
  out << "policy,budget,trial,world_seed,start_x,start_y,start_heading,actions,spent,"
         "information_gain,accuracy_score\n";
  for (const auto& t : r.trials) {
    out << t.policy << ',' << t.budget << ',' << t.trial << ',' << t.world_seed << ','
        << t.start.x << ',' << t.start.y << ',' << heading_name(t.start.heading) << ','
        << t.steps.size() << ',' << t.spent() << ',' << detail::fixed6(t.information_gain) << ','
        << detail::fixed6(t.accuracy_score) << '\n';
  }
}

// mean(sd) per policy and budget.
inline void write_summary_csv(const BenchmarkResult& r, std::ostream& out) {
  out << "policy,budget,trials,mean_information_gain,sd_information_gain,mean_accuracy_score,"
         "sd_accuracy_score\n";
  for (const auto& c : r.summary) {
    out << c.policy << ',' << c.budget << ',' << c.n << ',' << detail::fixed6(c.mean_gain) << ','
        << detail::fixed6(c.sd_gain) << ',' << detail::fixed6(c.mean_accuracy) << ','
        << detail::fixed6(c.sd_accuracy) << '\n';
  }
}

// Plain-text tables of mean(sd), one for gain and one for accuracy.
inline void print_tables(const BenchmarkResult& r, const BenchmarkConfig& cfg, std::ostream& out) {
  for (int which = 0; which < 2; ++which) {
    out << (which == 0 ? "Information gain (bits)" : "Accuracy score") << '\n';
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-12s", "policy");
    out << buf;
    for (Budget b : cfg.budgets) {
      std::snprintf(buf, sizeof buf, "%20d", b);
      out << buf;
    }
    out << '\n';
    for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
      const auto& first = r.summary[p * cfg.budgets.size()];
      std::snprintf(buf, sizeof buf, "%-12s", first.policy.c_str());
      out << buf;
      for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
        const auto& c = r.summary[p * cfg.budgets.size() + b];
        const double m = which == 0 ? c.mean_gain : c.mean_accuracy;
        const double s = which == 0 ? c.sd_gain : c.sd_accuracy;
        std::snprintf(buf, sizeof buf, "%12.2f(%6.2f)", m, s);
        out << buf;
      }
      out << '\n';
    }
    out << '\n';
  }
}

// ---- config --------------------------------------------------------------

inline nlohmann::json to_json(const BenchmarkConfig& c) {
  nlohmann::json j;
  nlohmann::json world = to_json(c.world);
  world.erase("seed");
  j["world"] = world;
  j["net"] = to_json(c.net);
  j["costs"] = {{"remote", c.costs.remote}, {"local", c.costs.local}};
  j["sense_on_rotate"] = c.sense_on_rotate;
  j["rock_density_prior"] = c.density().rate_per_l_cell;
  j["budgets"] = c.budgets;
  auto policies = nlohmann::json::array();
  for (const auto& p : c.policies) {
    policies.push_back({{"name", p.name},
                        {"label", p.label},
                        {"iterations", p.cfg.iterations},
                        {"cp", p.cfg.cp},
                        {"greedy_samples", p.cfg.greedy_samples},
                        {"seed", p.cfg.seed},
                        {"log_base", p.cfg.log_base == ExplorationLog::Natural ? "e" : "2"}});
  }
  j["policies"] = policies;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["paired"] = c.paired;
  j["threads"] = c.threads;
  return j;
}

inline PlannerConfig planner_config_from_json(const nlohmann::json& j, PlannerConfig p = {}) {
  if (j.contains("iterations")) p.iterations = j.at("iterations").get<int>();
  if (j.contains("cp")) p.cp = j.at("cp").get<double>();
  if (j.contains("greedy_samples")) p.greedy_samples = j.at("greedy_samples").get<int>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("log_base")) {
    const auto b = j.at("log_base").get<std::string>();
    if (b == "e") p.log_base = ExplorationLog::Natural;
    else if (b == "2") p.log_base = ExplorationLog::Base2;
    else throw ConfigError("log_base must be \"e\" or \"2\"");
  }
  return p;
}

inline CostModel costs_from_json(const nlohmann::json& j) {
  if (j.is_string()) return CostModel::preset(j.get<std::string>());
  CostModel c{j.at("remote").get<Budget>(), j.at("local").get<Budget>()};
  c.validate();
  return c;
}

// `net` may be "default", a path (relative to base_dir) or an inline object.
inline BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j,
                                                  const std::filesystem::path& base_dir = {}) {
  BenchmarkConfig c;
  try {
    if (j.contains("world")) c.world = world_config_from_json(j.at("world"));
    if (j.contains("net")) {
      const auto& n = j.at("net");
      if (n.is_string()) {
        const auto s = n.get<std::string>();
        if (s != "default") c.net = load_knowledge_net((base_dir / s).string());
      } else {
        c.net = knowledge_net_from_json(n);
      }
    }
    if (j.contains("costs")) c.costs = costs_from_json(j.at("costs"));
    if (j.contains("sense_on_rotate")) c.sense_on_rotate = j.at("sense_on_rotate").get<bool>();
    if (j.contains("rock_density_prior")) c.density_prior = j.at("rock_density_prior").get<double>();
    if (j.contains("budgets")) c.budgets = j.at("budgets").get<std::vector<Budget>>();
    if (j.contains("policies")) {
      c.policies.clear();
      for (const auto& p : j.at("policies")) {
        PolicySpec spec;
        spec.name = p.at("name").get<std::string>();
        spec.cfg = planner_config_from_json(p);
        spec.label = p.value("label", std::string());
        if (spec.label.empty()) spec.label = make_policy(spec.name, spec.cfg)->name();
        c.policies.push_back(std::move(spec));
      }
    } else {
      c.policies = standard_policies();
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("paired")) c.paired = j.at("paired").get<bool>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("benchmark config: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace sciplan
