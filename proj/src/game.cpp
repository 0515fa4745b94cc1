#include "simove/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace simove {

namespace {

void check_utility(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("terminal utility must lie in [0,1], got " + std::to_string(u));
  }
}

}  // namespace

int GameBuilder::push(GameNode node) {
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int GameBuilder::add_terminal(double utility) {
  check_utility(utility);
  GameNode n;
  n.kind = NodeKind::kTerminal;
  n.utility = utility;
  return push(std::move(n));
}

int GameBuilder::add_chance(std::vector<int> successors, std::vector<double> probs) {
  if (successors.empty() || successors.size() != probs.size()) {
    throw std::invalid_argument("chance node needs one probability per successor");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("chance probability must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("chance distribution must sum to 1");
  }
  const int id = size();
  for (int c : successors) {
    if (c < 0 || c >= id) throw std::invalid_argument("chance successor must be built before its parent");
  }
  GameNode n;
  n.kind = NodeKind::kChance;
  n.children = std::move(successors);
  n.chance_probs = std::move(probs);
  return push(std::move(n));
}

int GameBuilder::add_inner(int rows, int cols, std::vector<int> children) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("inner node needs at least one action per player");
  if (children.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("inner node needs rows*cols children");
  }
  const int id = size();
  for (int c : children) {
    if (c < 0 || c >= id) throw std::invalid_argument("child must be built before its parent");
  }
  GameNode n;
  n.kind = NodeKind::kInner;
  n.rows = rows;
  n.cols = cols;
  n.children = std::move(children);
  return push(std::move(n));
}

Game GameBuilder::build(int root) && {
  if (root < 0 || root >= size()) throw std::invalid_argument("root id out of range");

  // Children always precede parents, so one descending sweep marks reachability.
  std::vector<char> reachable(nodes_.size(), 0);
  reachable[static_cast<std::size_t>(root)] = 1;
  for (int id = root; id >= 0; --id) {
    if (!reachable[static_cast<std::size_t>(id)]) continue;
    for (int c : nodes_[static_cast<std::size_t>(id)].children) reachable[static_cast<std::size_t>(c)] = 1;
  }

  std::vector<int> remap(nodes_.size(), -1);
  Game g;
  for (int id = 0; id <= root; ++id) {
    if (!reachable[static_cast<std::size_t>(id)]) continue;
    remap[static_cast<std::size_t>(id)] = static_cast<int>(g.nodes_.size());
    GameNode n = std::move(nodes_[static_cast<std::size_t>(id)]);
    for (int& c : n.children) c = remap[static_cast<std::size_t>(c)];
    g.nodes_.push_back(std::move(n));
  }
  g.root_ = remap[static_cast<std::size_t>(root)];

  std::vector<int> depth(g.nodes_.size(), 0);
  for (std::size_t id = 0; id < g.nodes_.size(); ++id) {
    const GameNode& n = g.nodes_[id];
    int below = 0;
    for (int c : n.children) below = std::max(below, depth[static_cast<std::size_t>(c)]);
    if (n.kind == NodeKind::kInner) {
      depth[id] = below + 1;
      ++g.num_inner_;
      g.max_actions_ = std::max({g.max_actions_, n.rows, n.cols});
    } else {
      depth[id] = below;
    }
  }
  g.depth_ = depth[static_cast<std::size_t>(g.root_)];
  nodes_.clear();
  return g;
}

MatrixGame::MatrixGame(int rows, int cols, std::vector<double> payoffs)
    : rows_(rows), cols_(cols), payoffs_(std::move(payoffs)) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("matrix game must be nonempty");
  if (payoffs_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
    throw std::invalid_argument("matrix game payoff count mismatch");
  }
  for (double a : payoffs_) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("matrix game entries must lie in [0,1]");
  }
}

MatrixGame::MatrixGame(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("matrix game must be nonempty");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix");
    payoffs_.insert(payoffs_.end(), r.begin(), r.end());
  }
  for (double a : payoffs_) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("matrix game entries must lie in [0,1]");
  }
}

Game game_from_matrix(const MatrixGame& m) {
  GameBuilder b;
  std::vector<int> kids;
  kids.reserve(m.payoffs().size());
  for (double a : m.payoffs()) kids.push_back(b.add_terminal(a));
  const int root = b.add_inner(m.rows(), m.cols(), std::move(kids));
  return std::move(b).build(root);
}

MixedStrategy uniform_strategy(int num_actions) {
  return MixedStrategy(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
}

void validate_mixed_strategy(std::span<const double> s, double tol) {
  if (s.empty()) throw std::invalid_argument("empty mixed strategy");
  double total = 0.0;
  for (double p : s) {
    if (!(p >= 0.0)) throw std::invalid_argument("mixed strategy has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > tol) throw std::invalid_argument("mixed strategy does not sum to 1");
}

StrategyProfile StrategyProfile::empty_for(const Game& g, ProfileFlavor flavor) {
  StrategyProfile p;
  p.flavor = flavor;
  p.player1.resize(static_cast<std::size_t>(g.num_nodes()));
  p.player2.resize(static_cast<std::size_t>(g.num_nodes()));
  return p;
}

StrategyProfile StrategyProfile::uniform_for(const Game& g, ProfileFlavor flavor) {
  StrategyProfile p = empty_for(g, flavor);
  for (int id = 0; id < g.num_nodes(); ++id) {
    const GameNode& n = g.node(id);
    if (n.kind != NodeKind::kInner) continue;
    p.player1[static_cast<std::size_t>(id)] = uniform_strategy(n.rows);
    p.player2[static_cast<std::size_t>(id)] = uniform_strategy(n.cols);
  }
  return p;
}

}  // namespace simove
