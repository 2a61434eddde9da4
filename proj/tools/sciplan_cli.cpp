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

// Command-line front end: generate worlds, run and replay single missions,
// and run benchmark matrices.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sciplan/sciplan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sciplan;

namespace {

constexpr int kConfigErrorExit = 2;
constexpr int kMismatchExit = 3;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

WorldConfig preset_world(const std::string& name) {
  if (name == "desk") return WorldConfig::desk_scale();
  if (name == "full") return WorldConfig::full_scale();
  throw ConfigError("unknown world preset '" + name + "' (expected desk or full)");
}

KnowledgeNet net_from_option(const std::string& path) {
  return path.empty() ? default_knowledge_net() : load_knowledge_net(path);
}

// "x,y,HEADING", e.g. "3,4,NE".
Pose parse_pose(const std::string& text) {
  std::stringstream ss(text);
  std::string x, y, h;
  if (!std::getline(ss, x, ',') || !std::getline(ss, y, ',') || !std::getline(ss, h)) {
    throw ConfigError("start pose must look like x,y,HEADING");
  }
  try {
    return pose_from_json({{"x", std::stoi(x)}, {"y", std::stoi(y)}, {"heading", h}});
  } catch (const std::invalid_argument&) {
    throw ConfigError("start pose must look like x,y,HEADING");
  }
}

// ---- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string preset = "desk";
  std::string world_config;
  std::string net;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  WorldConfig cfg = a.world_config.empty() ? preset_world(a.preset)
                                           : world_config_from_json(read_json(a.world_config));
  cfg.seed = a.seed;
  const WorldState world = generate(cfg, net_from_option(a.net));
  write_text(a.out, to_json(world).dump() + "\n");
  if (!a.out.empty() && a.out != "-") {
    std::cerr << "wrote " << a.out << ": " << world.geometry.l_width << "x"
              << world.geometry.l_height << " cells, " << world.rocks.size() << " rocks\n";
  }
  return 0;
}

// ---- run / replay ----------------------------------------------------------

struct RunArgs {
  std::string policy;
  Budget budget = 0;
  std::uint64_t seed = 0;
  std::string net;
  std::string world;
  std::string preset = "desk";
  std::string costs = "sim";
  std::optional<std::string> start;
  bool no_rotate_sensing = false;
  double density_prior = -1.0;
  PlannerConfig planner;
  std::string out;
};

void print_result(const TrialResult& r) {
  std::printf("policy %s, budget %d: %zu actions, spent %d, information gain %.6f bits, "
              "accuracy score %.6f\n",
              r.policy.c_str(), r.budget, r.steps.size(), r.spent(), r.information_gain,
              r.accuracy_score);
}

int cmd_run(const RunArgs& a) {
  const KnowledgeNet net = net_from_option(a.net);
  WorldState world;
  std::uint64_t world_seed = derive_seed(a.seed, {0});
  if (a.world.empty()) {
    WorldConfig cfg = preset_world(a.preset);
    cfg.seed = world_seed;
    world = generate(cfg, net);
  } else {
    world = load_world(a.world);
    world_seed = world.config.seed;
  }
  validate_world(world, net);

  MissionSetup setup;
  setup.budget = a.budget;
  setup.start = a.start ? parse_pose(*a.start) : random_start(world, derive_seed(a.seed, {1}));
  setup.rules = {CostModel::preset(a.costs), !a.no_rotate_sensing};
  setup.density = {a.density_prior >= 0.0 ? a.density_prior : world.config.rock_density};
  setup.mission_seed = derive_seed(a.seed, {2});
  setup.planner_seed = derive_seed(a.seed, {3, a.planner.seed});
  if (a.budget < 0) throw ConfigError("budget must be >= 0");

  auto policy = make_policy(a.policy, a.planner);
  TrialResult r = run_mission(world, net, *policy, setup);
  r.world_seed = world_seed;
  print_result(r);
  if (r.planner_iterations > 0) {
    std::printf("search: %ld iterations, %.6f s per iteration\n", r.planner_iterations,
                r.planner_seconds / static_cast<double>(r.planner_iterations));
  }

  if (!a.out.empty()) {
    json log;
    log["policy"] = a.policy;
    log["label"] = r.policy;
    log["planner"] = {{"iterations", a.planner.iterations},
                      {"cp", a.planner.cp},
                      {"greedy_samples", a.planner.greedy_samples},
                      {"seed", a.planner.seed}};
    log["budget"] = a.budget;
    log["seed"] = a.seed;
    log["world_seed"] = world_seed;
    log["mission_seed"] = setup.mission_seed;
    log["planner_seed"] = setup.planner_seed;
    log["costs"] = {{"remote", setup.rules.costs.remote}, {"local", setup.rules.costs.local}};
    log["sense_on_rotate"] = setup.rules.sense_on_rotate;
    log["rock_density_prior"] = setup.density.rate_per_l_cell;
    log["start"] = pose_to_json(setup.start);
    auto actions = json::array();
    for (const auto& s : r.steps) actions.push_back(action_name(s.action));
    log["actions"] = actions;
    log["trace"] = trace_to_json(r);
    log["information_gain"] = r.information_gain;
    log["accuracy_score"] = r.accuracy_score;
    log["wall_seconds"] = r.wall_seconds;
    log["net"] = to_json(net);
    log["world"] = to_json(world);
    write_text(a.out, log.dump(1) + "\n");
  }
  return 0;
}

struct ReplayArgs {
  std::string log;
  std::string out;
};

int cmd_replay(const ReplayArgs& a) {
  const json log = read_json(a.log);
  KnowledgeNet net;
  WorldState world;
  MissionSetup setup;
  std::vector<SensingAction> actions;
  try {
    net = knowledge_net_from_json(log.at("net"));
    world = world_from_json(log.at("world"));
    setup.budget = log.at("budget").get<Budget>();
    setup.start = pose_from_json(log.at("start"));
    setup.rules.costs = costs_from_json(log.at("costs"));
    setup.rules.sense_on_rotate = log.value("sense_on_rotate", true);
    setup.density = {log.value("rock_density_prior", world.config.rock_density)};
    setup.mission_seed = log.at("mission_seed").get<std::uint64_t>();
    for (const auto& name : log.at("actions")) actions.push_back(action_from_name(name.get<std::string>()));
  } catch (const json::exception& e) {
    throw ConfigError(a.log + ": " + e.what());
  }
  validate_world(world, net);

  const TrialResult r =
      replay_actions(world, net, actions, setup, log.value("label", std::string("replay")));
  print_result(r);
  if (!a.out.empty()) {
    json out = {{"information_gain", r.information_gain},
                {"accuracy_score", r.accuracy_score},
                {"trace", trace_to_json(r)}};
    write_text(a.out, out.dump(1) + "\n");
  }
  if (log.contains("information_gain") && log.contains("accuracy_score")) {
    const double dg = std::abs(r.information_gain - log.at("information_gain").get<double>());
    const double da = std::abs(r.accuracy_score - log.at("accuracy_score").get<double>());
    if (dg > 1e-9 || da > 1e-9) {
      std::fprintf(stderr, "sciplan: replay differs from the logged scores (gain %.3g, accuracy %.3g)\n",
                   dg, da);
      return kMismatchExit;
    }
    std::printf("matches the logged scores\n");
  }
  return 0;
}

// ---- benchmark -------------------------------------------------------------

struct BenchmarkArgs {
  std::string config;
  std::string out = ".";
  int threads = -1;
  bool quiet = false;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  BenchmarkConfig cfg =
      benchmark_config_from_json(read_json(a.config), fs::path(a.config).parent_path());
  if (a.threads >= 0) cfg.threads = a.threads;

  const auto t0 = std::chrono::steady_clock::now();
  const BenchmarkResult r = run_benchmark(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(a.out);
  const fs::path dir(a.out);
  {
    std::ostringstream trials, summary;
    write_trials_csv(r, trials);
    write_summary_csv(r, summary);
    write_text((dir / "trials.csv").string(), trials.str());
    write_text((dir / "summary.csv").string(), summary.str());
  }

  json timing = {{"wall_seconds", secs},
                 {"threads", cfg.threads > 0 ? cfg.threads
                                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))}};
  json per_iteration = json::object();
  for (const auto& [label, s] : r.seconds_per_iteration()) per_iteration[label] = s;
  timing["seconds_per_mcts_iteration"] = per_iteration;
  json manifest = {{"config", to_json(cfg)},
                   {"outputs", {"trials.csv", "summary.csv"}},
                   {"timing", timing}};
  write_text((dir / "manifest.json").string(), manifest.dump(1) + "\n");

  if (!a.quiet) print_tables(r, cfg, std::cout);
  for (const auto& [label, s] : r.seconds_per_iteration()) {
    std::printf("%s: %.6f s per search iteration\n", label.c_str(), s);
  }
  std::printf("%zu trials in %.1f s, results in %s\n", r.trials.size(), secs, dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted multi-sensor exploration planning"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Sample a ground-truth world and write it as JSON");
  g->add_option("--preset", gen.preset, "World size preset: desk or full")->capture_default_str();
  g->add_option("--world-config", gen.world_config, "World config JSON (overrides --preset)");
  g->add_option("--net", gen.net, "Knowledge net JSON (default: built-in)");
  g->add_option("--seed", gen.seed, "World seed")->capture_default_str();
  g->add_option("--out,-o", gen.out, "Output path (default: stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run one mission and optionally write its log");
  r->add_option("--policy", run.policy, "mcts, greedy, random or fixed")->required();
  r->add_option("--budget", run.budget, "Sensing budget in cost units")->required();
  r->add_option("--seed", run.seed, "Master seed for world, start, sensor noise and planner")
      ->capture_default_str();
  r->add_option("--net", run.net, "Knowledge net JSON (default: built-in)");
  r->add_option("--world", run.world, "World JSON from `generate` (default: sample one)");
  r->add_option("--preset", run.preset, "World preset when --world is absent: desk or full")
      ->capture_default_str();
  r->add_option("--costs", run.costs, "Cost preset: sim (1/8) or hardware (1/5)")->capture_default_str();
  r->add_option("--start", run.start, "Start pose x,y,HEADING (default: random)");
  r->add_flag("--no-rotate-sensing", run.no_rotate_sensing, "Rotations do not trigger a reading");
  r->add_option("--density-prior", run.density_prior,
                "Rocks per L cell assumed by planners (default: the world's)");
  r->add_option("--iterations", run.planner.iterations, "MCTS iterations per decision")
      ->capture_default_str();
  r->add_option("--cp", run.planner.cp, "UCB exploration constant")->capture_default_str();
  r->add_option("--greedy-samples", run.planner.greedy_samples, "Greedy samples per action")
      ->capture_default_str();
  r->add_option("--out,-o", run.out, "Write the run log JSON here");

  ReplayArgs rep;
  auto* p = app.add_subcommand("replay", "Re-execute a run log's actions and re-score them");
  p->add_option("log", rep.log, "Run log written by `run --out`")->required();
  p->add_option("--out,-o", rep.out, "Write the re-scored trace here");

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "Run a policy x budget matrix of paired trials");
  b->add_option("--config", bench.config, "Benchmark config JSON")->required();
  b->add_option("--out,-o", bench.out, "Output directory")->capture_default_str();
  b->add_option("--threads", bench.threads, "Worker threads (0: all cores; default: config)");
  b->add_flag("--quiet,-q", bench.quiet, "Do not print the result tables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_run(run);
    if (*p) return cmd_replay(rep);
    if (*b) return cmd_benchmark(bench);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "sciplan: config error: %s\n", e.what());
    return kConfigErrorExit;
  } catch (const OutOfBounds& e) {
    std::fprintf(stderr, "sciplan: config error: %s\n", e.what());
    return kConfigErrorExit;
  } catch (const InvalidDistribution& e) {
    std::fprintf(stderr, "sciplan: config error: %s\n", e.what());
    return kConfigErrorExit;
  } catch (const IllegalAction& e) {
    std::fprintf(stderr, "sciplan: %s\n", e.what());
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sciplan: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
