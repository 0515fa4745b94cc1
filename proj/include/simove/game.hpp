#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace simove {

enum class NodeKind : std::uint8_t { kInner, kChance, kTerminal };

// One state of a two-player zero-sum simultaneous-move game.
//
// Inner states carry a rows x cols joint-action grid; `children` is stored
// row-major so the successor of joint action (i, j) is children[i * cols + j].
// Chance states list their successors together with `chance_probs`.
// Terminal states carry the utility of player 1; player 2 receives 1 - u.
struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  int rows = 0;
  int cols = 0;
  std::vector<int> children;
  std::vector<double> chance_probs;
  double utility = 0.0;

  int child(int i, int j) const { return children[static_cast<std::size_t>(i * cols + j)]; }
};

// Immutable game description. Node ids are assigned bottom-up: every child
// id is strictly smaller than its parent's, so ascending id order is a valid
// leaf-to-root order and descending order a valid root-to-leaf order.
//
// Transposed histories may share a node (Goofspiel does this), which turns
// the transition graph into a DAG. Every quantity computed on it depends only
// on the state, so values are the same as on the unfolded tree.
class Game {
 public:
  int root() const { return root_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const GameNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::span<const GameNode> nodes() const { return nodes_; }

  // Longest root-to-terminal path counted in inner states.
  int depth() const { return depth_; }
  int num_inner() const { return num_inner_; }
  // Largest action count of either player at any inner state.
  int max_actions() const { return max_actions_; }

  bool is_inner(int id) const { return node(id).kind == NodeKind::kInner; }

 private:
  friend class GameBuilder;
  Game() = default;

  std::vector<GameNode> nodes_;
  int root_ = 0;
  int depth_ = 0;
  int num_inner_ = 0;
  int max_actions_ = 1;
};

class GameBuilder {
 public:
  int add_terminal(double utility);
  int add_chance(std::vector<int> successors, std::vector<double> probs);
  // `children` has rows * cols entries, row-major.
  int add_inner(int rows, int cols, std::vector<int> children);

  int size() const { return static_cast<int>(nodes_.size()); }

  // Validates and freezes the game. Nodes not reachable from `root` are
  // dropped and the remaining ids are compacted.
  Game build(int root) &&;

 private:
  int push(GameNode node);
  std::vector<GameNode> nodes_;
};

// Single-stage m x n game with payoffs to player 1 in [0, 1].
class MatrixGame {
 public:
  MatrixGame(int rows, int cols, std::vector<double> payoffs);
  MatrixGame(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int i, int j) const { return payoffs_[static_cast<std::size_t>(i * cols_ + j)]; }
  std::span<const double> payoffs() const { return payoffs_; }

 private:
  int rows_;
  int cols_;
  std::vector<double> payoffs_;
};

// Wraps a matrix game as a depth-1 Game whose joint actions lead to terminals.
Game game_from_matrix(const MatrixGame& m);

using MixedStrategy = std::vector<double>;

MixedStrategy uniform_strategy(int num_actions);

// Throws std::invalid_argument unless entries are >= 0 and sum to 1 within tol.
void validate_mixed_strategy(std::span<const double> s, double tol = 1e-12);

enum class ProfileFlavor { kEmpirical, kAverage, kExplorationRemoved, kExact };

// Behavioral strategy for both players: for each node id, a distribution over
// that player's actions. An empty vector marks the node as undefined.
struct StrategyProfile {
  ProfileFlavor flavor = ProfileFlavor::kExact;
  std::vector<MixedStrategy> player1;
  std::vector<MixedStrategy> player2;

  // Profile with an empty (undefined) entry for every node of `g`.
  static StrategyProfile empty_for(const Game& g, ProfileFlavor flavor);
  // Profile that is uniform at every inner node of `g`.
  static StrategyProfile uniform_for(const Game& g, ProfileFlavor flavor = ProfileFlavor::kExact);

  const std::vector<MixedStrategy>& of(int player) const { return player == 0 ? player1 : player2; }
  std::vector<MixedStrategy>& of(int player) { return player == 0 ? player1 : player2; }
};

}  // namespace simove
