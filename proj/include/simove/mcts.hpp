#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simove/bandits.hpp"
#include "simove/game.hpp"
#include "simove/rng.hpp"

namespace simove {

enum class Variant {
  kPlain,     // policies are updated with the sampled value x
  kAveraged,  // policies are updated with the child's running mean
};

Variant parse_variant(std::string_view token);  // "smmcts" or "smmcts-a"
std::string to_string(Variant v);

// Streaming statistics for the payoffs s_ij observed after joint action
// (i, j), together with the weights w_ij: the number of steps with column j
// since the previous use of (i, j), counting the current one.
class UpoTracker {
 public:
  UpoTracker() = default;
  UpoTracker(int rows, int cols);

  void record(int i, int j, double s);

  long long count(int i, int j) const { return at(i, j).count; }
  // Plain and weighted averages; nullopt before the first use of (i, j).
  std::optional<double> plain_average(int i, int j) const;
  std::optional<double> weighted_average(int i, int j) const;
  double weight_sum(int i, int j) const { return at(i, j).sum_w; }
  // max over used (i, j) of |plain - weighted|; 0 when nothing is recorded.
  double max_gap() const;

 private:
  struct Cell {
    long long count = 0;
    long long pending = 0;
    double sum_s = 0.0;
    double sum_ws = 0.0;
    double sum_w = 0.0;
  };
  const Cell& at(int i, int j) const { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }
  Cell& at(int i, int j) { return cells_[static_cast<std::size_t>(i * cols_ + j)]; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cell> cells_;
};

struct TreeNode {
  std::unique_ptr<SelectionPolicy> policy1;
  std::unique_ptr<SelectionPolicy> policy2;
  long long visits = 0;  // n^h
  double total = 0.0;    // X^h
  std::vector<long long> count1;  // t_i
  std::vector<long long> count2;  // t_j
  std::vector<long long> joint;   // t_ij, row-major
  std::vector<double> strategy_sum1;
  std::vector<double> strategy_sum2;
  UpoTracker upo;

  double mean() const { return visits > 0 ? total / static_cast<double>(visits) : 0.0; }
};

enum class ExtractFlavor { kEmpirical, kAverage, kEmpiricalNoExplore, kAverageNoExplore };

inline constexpr ExtractFlavor kAllFlavors[] = {ExtractFlavor::kEmpirical, ExtractFlavor::kAverage,
                                                ExtractFlavor::kEmpiricalNoExplore,
                                                ExtractFlavor::kAverageNoExplore};

std::string to_string(ExtractFlavor f);
ExtractFlavor parse_flavor(std::string_view token);

// Called after every in-tree update with the node, the joint action and the
// value the policies were updated with (from player 1's perspective).
using UpdateObserver = std::function<void(int node, int i, int j, double value)>;

// Incrementally built search tree over a fixed game. Nodes are keyed by game
// node id, so states reachable along several histories share statistics.
class SearchTree {
 public:
  SearchTree(const Game& game, PolicyFactory factory, Variant variant);

  // One SM-MCTS iteration from the root; returns the sampled payoff.
  double run_iteration(Rng& rng);

  const Game& game() const { return *game_; }
  Variant variant() const { return variant_; }
  long long iterations() const { return iterations_; }
  int num_expanded() const { return expanded_; }
  // nullptr for states not yet in the tree.
  const TreeNode* node(int id) const { return nodes_[static_cast<std::size_t>(id)].get(); }
  TreeNode* mutable_node(int id) { return nodes_[static_cast<std::size_t>(id)].get(); }

  // Behavioral profile over all inner states. States without visits get the
  // uniform strategy.
  StrategyProfile extract_strategy(ExtractFlavor flavor) const;
  // g(t) at the root: X/n, or 0 before any in-tree visit.
  double root_average_payoff() const;
  double upo_metric(int id) const;

  void set_observer(UpdateObserver observer) { observer_ = std::move(observer); }

 private:
  double visit(int id, Rng& rng);
  double rollout(int id, Rng& rng) const;
  void expand(int id);

  const Game* game_;
  PolicyFactory factory_;
  Variant variant_;
  std::vector<std::unique_ptr<TreeNode>> nodes_;
  long long iterations_ = 0;
  int expanded_ = 0;
  UpdateObserver observer_;
};

}  // namespace simove
