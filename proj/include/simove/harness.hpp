#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "simove/bandits.hpp"
#include "simove/games.hpp"
#include "simove/mcts.hpp"
#include "simove/solver.hpp"

namespace simove {

class GroundTruthUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string exp_id = "exp";
  GameSpec game;
  Variant variant = Variant::kPlain;
  PolicyKind policy = PolicyKind::kExp3;
  double gamma = 0.1;
  long long iterations = 1000;
  // Empty means default_checkpoints(iterations).
  std::vector<long long> checkpoints;
  std::vector<std::uint64_t> seeds{0};
  std::vector<ExtractFlavor> flavors{std::begin(kAllFlavors), std::end(kAllFlavors)};
  std::string output_path;  // CSV destination; empty writes nothing
  long long cex_b0 = 1000;  // buffer length for the cex policy (epsilon = gamma)

  void validate() const;
  std::vector<long long> resolved_checkpoints() const;
};

struct TraceRow {
  std::string exp_id;
  std::string game;
  std::string variant;
  std::string policy;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  long long iteration = 0;
  std::vector<Exploitability> expl;  // one per recorded flavor
  double g_root = 0.0;
  double upo_max = 0.0;
  double wall_ms = 0.0;
};

// 20 points per decade starting at 10 (rounded, deduplicated), always ending
// at `iterations`.
std::vector<long long> default_checkpoints(long long iterations, int per_decade = 20);
// `count` strictly increasing, roughly log-spaced points in [1, iterations]
// starting at min(10, iterations) and ending at `iterations`.
std::vector<long long> log_checkpoints(long long iterations, int count);

struct GroundTruth {
  Game game;
  SolvedGame solved;
  double value = 0.0;
};

// Exact solution of the game, built once per spec string and shared. Throws
// GroundTruthUnavailable for games larger than `max_nodes`.
std::shared_ptr<const GroundTruth> ground_truth(const GameSpec& spec, long long max_nodes = 4'000'000);

PolicyFactory make_factory(const ExperimentConfig& cfg);

// Called at every checkpoint with the live tree and the freshly built row.
using CheckpointHook = std::function<void(const SearchTree&, const TraceRow&)>;

// Runs all seeds concurrently (OpenMP). Rows come back ordered by seed then
// iteration, identical to run_experiment_serial. The hook is invoked under a
// lock. Writes the CSV when cfg.output_path is set.
std::vector<TraceRow> run_experiment(const ExperimentConfig& cfg, const CheckpointHook& hook = {});
std::vector<TraceRow> run_experiment_serial(const ExperimentConfig& cfg, const CheckpointHook& hook = {});

// One seed, used by both of the above.
std::vector<TraceRow> run_seed(const ExperimentConfig& cfg, const GroundTruth& truth, std::uint64_t seed,
                               const CheckpointHook& hook = {});

}  // namespace simove
