#include "simove/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>

#include "simove/counterexample.hpp"
#include "simove/csv.hpp"

namespace simove {

void ExperimentConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (flavors.empty()) throw std::invalid_argument("at least one strategy flavor is required");
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] < 1 || checkpoints[k] > iterations) {
      throw std::invalid_argument("checkpoints must lie in [1, iterations]");
    }
    if (k > 0 && checkpoints[k] <= checkpoints[k - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
}

std::vector<long long> ExperimentConfig::resolved_checkpoints() const {
  return checkpoints.empty() ? default_checkpoints(iterations) : checkpoints;
}

std::vector<long long> default_checkpoints(long long iterations, int per_decade) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (per_decade < 1) throw std::invalid_argument("per_decade must be >= 1");
  std::vector<long long> out;
  for (int k = 0;; ++k) {
    const auto p = std::llround(10.0 * std::pow(10.0, static_cast<double>(k) / per_decade));
    if (p >= iterations) break;
    if (out.empty() || p > out.back()) out.push_back(p);
  }
  out.push_back(iterations);
  return out;
}

std::vector<long long> log_checkpoints(long long iterations, int count) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (count < 1) throw std::invalid_argument("checkpoint count must be >= 1");
  if (count >= iterations) {
    std::vector<long long> all(static_cast<std::size_t>(iterations));
    for (long long k = 0; k < iterations; ++k) all[static_cast<std::size_t>(k)] = k + 1;
    return all;
  }
  if (count == 1) return {iterations};
  const double start = static_cast<double>(std::min<long long>(10, iterations));
  const double ratio = static_cast<double>(iterations) / start;
  std::vector<long long> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = std::llround(start * std::pow(ratio, static_cast<double>(k) / (count - 1)));
  }
  // Push collisions apart, then pull the tail back under the limit.
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = std::max(out[k], out[k - 1] + 1);
  out.back() = iterations;
  for (std::size_t k = out.size() - 1; k-- > 0;) out[k] = std::min(out[k], out[k + 1] - 1);
  return out;
}

namespace {

// Rough node-count check before building anything huge.
void check_size(const GameSpec& spec, long long max_nodes) {
  const auto fail = [&](const std::string& why) {
    throw GroundTruthUnavailable("ground truth unavailable for " + spec.to_string() + ": " + why);
  };
  if (const auto* g = std::get_if<GoofspielSpec>(&spec.variant); g && g->deck > 8) fail("deck too large");
  if (const auto* r = std::get_if<RandomGameSpec>(&spec.variant)) {
    const double leaves = std::pow(static_cast<double>(r->branching), 2.0 * r->depth);
    if (leaves > static_cast<double>(max_nodes)) fail("tree too large");
  }
  if (const auto* o = std::get_if<OshiZumoSpec>(&spec.variant)) {
    const double states = (2.0 * o->half_width + 3.0) * (o->coins + 1.0) * (o->coins + 1.0);
    if (states > static_cast<double>(max_nodes)) fail("state space too large");
  }
  if (const auto* a = std::get_if<AntiSpec>(&spec.variant); a && a->depth > max_nodes) fail("chain too long");
  if (const auto* l = std::get_if<LinBoundSpec>(&spec.variant); l && l->depth > max_nodes) fail("chain too long");
}

}  // namespace

std::shared_ptr<const GroundTruth> ground_truth(const GameSpec& spec, long long max_nodes) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const GroundTruth>> cache;
  const std::string key = spec.to_string();
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(key); it != cache.end()) {
    if (it->second->game.num_nodes() > max_nodes) {
      throw GroundTruthUnavailable("ground truth unavailable for " + key + ": too many nodes");
    }
    return it->second;
  }
  check_size(spec, max_nodes);
  auto truth = std::make_shared<GroundTruth>(GroundTruth{make_game(spec), {}, 0.0});
  if (truth->game.num_nodes() > max_nodes) {
    throw GroundTruthUnavailable("ground truth unavailable for " + key + ": " +
                                 std::to_string(truth->game.num_nodes()) + " nodes");
  }
  truth->solved = compute_subgame_values(truth->game);
  truth->value = truth->solved.root_value(truth->game);
  cache.emplace(key, truth);
  return truth;
}

PolicyFactory make_factory(const ExperimentConfig& cfg) {
  if (cfg.policy == PolicyKind::kCounterexample) {
    CooperationParams p;
    p.epsilon = cfg.gamma;
    p.b0 = cfg.cex_b0;
    return make_counterexample_factory(p);
  }
  return make_policy_factory(cfg.policy, cfg.gamma);
}

std::vector<TraceRow> run_seed(const ExperimentConfig& cfg, const GroundTruth& truth, std::uint64_t seed,
                               const CheckpointHook& hook) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::vector<long long> checkpoints = cfg.resolved_checkpoints();
  SearchTree tree(truth.game, make_factory(cfg), cfg.variant);
  Rng rng(seed);

  const std::string game = cfg.game.to_string();
  const std::string variant = to_string(cfg.variant);
  const std::string policy = to_string(cfg.policy);

  std::vector<TraceRow> rows;
  rows.reserve(checkpoints.size());
  std::size_t next = 0;
  for (long long t = 1; t <= cfg.iterations && next < checkpoints.size(); ++t) {
    tree.run_iteration(rng);
    if (t != checkpoints[next]) continue;
    ++next;
    TraceRow row;
    row.exp_id = cfg.exp_id;
    row.game = game;
    row.variant = variant;
    row.policy = policy;
    row.gamma = cfg.gamma;
    row.seed = seed;
    row.iteration = t;
    for (ExtractFlavor f : cfg.flavors) {
      row.expl.push_back(exploitability(truth.game, truth.value, tree.extract_strategy(f)));
    }
    row.g_root = tree.root_average_payoff();
    row.upo_max = tree.upo_metric(truth.game.root());
    row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (hook) hook(tree, row);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void finish(const ExperimentConfig& cfg, const std::vector<TraceRow>& rows) {
  if (!cfg.output_path.empty()) write_trace_csv(cfg.output_path, cfg.flavors, rows);
}

}  // namespace

std::vector<TraceRow> run_experiment_serial(const ExperimentConfig& cfg, const CheckpointHook& hook) {
  cfg.validate();
  const auto truth = ground_truth(cfg.game);
  make_factory(cfg);  // reject bad policy parameters before searching
  std::vector<TraceRow> rows;
  for (std::uint64_t seed : cfg.seeds) {
    auto part = run_seed(cfg, *truth, seed, hook);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  finish(cfg, rows);
  return rows;
}

std::vector<TraceRow> run_experiment(const ExperimentConfig& cfg, const CheckpointHook& hook) {
  cfg.validate();
  const auto truth = ground_truth(cfg.game);
  make_factory(cfg);
  const auto n = static_cast<long long>(cfg.seeds.size());
  std::vector<std::vector<TraceRow>> parts(cfg.seeds.size());
  std::vector<std::exception_ptr> errors(cfg.seeds.size());
  std::mutex hook_mu;
  CheckpointHook locked;
  if (hook) {
    locked = [&](const SearchTree& tree, const TraceRow& row) {
      std::lock_guard<std::mutex> lock(hook_mu);
      hook(tree, row);
    };
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      parts[idx] = run_seed(cfg, *truth, cfg.seeds[idx], locked);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<TraceRow> rows;
  for (auto& part : parts) {
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  finish(cfg, rows);
  return rows;
}

}  // namespace simove
