#include "simove/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "simove/solver.hpp"

namespace simove {

Variant parse_variant(std::string_view token) {
  if (token == "smmcts") return Variant::kPlain;
  if (token == "smmcts-a") return Variant::kAveraged;
  throw std::invalid_argument("unknown variant '" + std::string(token) + "' (expected smmcts or smmcts-a)");
}

std::string to_string(Variant v) { return v == Variant::kPlain ? "smmcts" : "smmcts-a"; }

std::string to_string(ExtractFlavor f) {
  switch (f) {
    case ExtractFlavor::kEmpirical: return "empirical";
    case ExtractFlavor::kAverage: return "average";
    case ExtractFlavor::kEmpiricalNoExplore: return "empirical_noexplore";
    case ExtractFlavor::kAverageNoExplore: return "average_noexplore";
  }
  return "?";
}

ExtractFlavor parse_flavor(std::string_view token) {
  for (ExtractFlavor f : kAllFlavors) {
    if (token == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown strategy flavor '" + std::string(token) + "'");
}

// ---------------------------------------------------------------- UPO

UpoTracker::UpoTracker(int rows, int cols)
    : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

void UpoTracker::record(int i, int j, double s) {
  for (int r = 0; r < rows_; ++r) {
    if (r != i) ++at(r, j).pending;
  }
  Cell& c = at(i, j);
  const double w = 1.0 + static_cast<double>(c.pending);
  c.pending = 0;
  ++c.count;
  c.sum_s += s;
  c.sum_ws += w * s;
  c.sum_w += w;
}

std::optional<double> UpoTracker::plain_average(int i, int j) const {
  const Cell& c = at(i, j);
  if (c.count == 0) return std::nullopt;
  return c.sum_s / static_cast<double>(c.count);
}

std::optional<double> UpoTracker::weighted_average(int i, int j) const {
  const Cell& c = at(i, j);
  if (c.count == 0) return std::nullopt;
  return c.sum_ws / c.sum_w;
}

double UpoTracker::max_gap() const {
  double gap = 0.0;
  for (const Cell& c : cells_) {
    if (c.count == 0) continue;
    gap = std::max(gap, std::abs(c.sum_s / static_cast<double>(c.count) - c.sum_ws / c.sum_w));
  }
  return gap;
}

// ---------------------------------------------------------------- tree

SearchTree::SearchTree(const Game& game, PolicyFactory factory, Variant variant)
    : game_(&game), factory_(std::move(factory)), variant_(variant) {
  if (!factory_) throw std::invalid_argument("search tree needs a policy factory");
  nodes_.resize(static_cast<std::size_t>(game.num_nodes()));
}

void SearchTree::expand(int id) {
  const GameNode& g = game_->node(id);
  auto n = std::make_unique<TreeNode>();
  n->policy1 = factory_(*game_, id, 0, g.rows);
  n->policy2 = factory_(*game_, id, 1, g.cols);
  if (!n->policy1 || !n->policy2 || n->policy1->num_actions() != g.rows || n->policy2->num_actions() != g.cols) {
    throw std::logic_error("policy factory returned a policy with the wrong action count");
  }
  n->count1.assign(static_cast<std::size_t>(g.rows), 0);
  n->count2.assign(static_cast<std::size_t>(g.cols), 0);
  n->joint.assign(g.children.size(), 0);
  n->strategy_sum1.assign(static_cast<std::size_t>(g.rows), 0.0);
  n->strategy_sum2.assign(static_cast<std::size_t>(g.cols), 0.0);
  n->upo = UpoTracker(g.rows, g.cols);
  nodes_[static_cast<std::size_t>(id)] = std::move(n);
  ++expanded_;
}

double SearchTree::rollout(int id, Rng& rng) const {
  for (;;) {
    const GameNode& g = game_->node(id);
    switch (g.kind) {
      case NodeKind::kTerminal: return g.utility;
      case NodeKind::kChance: id = g.children[static_cast<std::size_t>(sample_index(rng, g.chance_probs))]; break;
      case NodeKind::kInner: {
        const int i = uniform_index(rng, g.rows);
        const int j = uniform_index(rng, g.cols);
        id = g.child(i, j);
        break;
      }
    }
  }
}

double SearchTree::visit(int id, Rng& rng) {
  const GameNode& g = game_->node(id);
  if (g.kind == NodeKind::kTerminal) return g.utility;
  if (g.kind == NodeKind::kChance) {
    return visit(g.children[static_cast<std::size_t>(sample_index(rng, g.chance_probs))], rng);
  }
  TreeNode* n = nodes_[static_cast<std::size_t>(id)].get();
  if (n == nullptr) {
    expand(id);
    return rollout(id, rng);
  }

  const int i = n->policy1->select(rng);
  const int j = n->policy2->select(rng);
  const auto s1 = n->policy1->last_strategy();
  const auto s2 = n->policy2->last_strategy();
  for (std::size_t a = 0; a < s1.size(); ++a) n->strategy_sum1[a] += s1[a];
  for (std::size_t b = 0; b < s2.size(); ++b) n->strategy_sum2[b] += s2[b];

  const int child = g.child(i, j);
  const double x = visit(child, rng);

  double value = x;
  if (variant_ == Variant::kAveraged) {
    // Child statistics already include this iteration. A child that was
    // only just expanded (or is not an in-tree state) has no mean yet.
    const TreeNode* c = nodes_[static_cast<std::size_t>(child)].get();
    if (c != nullptr && c->visits > 0) value = c->mean();
  }
  n->policy1->update(value);
  n->policy2->update(1.0 - value);

  ++n->visits;
  n->total += x;
  ++n->count1[static_cast<std::size_t>(i)];
  ++n->count2[static_cast<std::size_t>(j)];
  ++n->joint[static_cast<std::size_t>(i * g.cols + j)];
  n->upo.record(i, j, value);
  if (observer_) observer_(id, i, j, value);
  return x;
}

double SearchTree::run_iteration(Rng& rng) {
  ++iterations_;
  return visit(game_->root(), rng);
}

double SearchTree::root_average_payoff() const {
  const TreeNode* r = node(game_->root());
  return r == nullptr ? 0.0 : r->mean();
}

double SearchTree::upo_metric(int id) const {
  const TreeNode* n = node(id);
  return n == nullptr ? 0.0 : n->upo.max_gap();
}

StrategyProfile SearchTree::extract_strategy(ExtractFlavor flavor) const {
  const bool empirical = flavor == ExtractFlavor::kEmpirical || flavor == ExtractFlavor::kEmpiricalNoExplore;
  const bool strip = flavor == ExtractFlavor::kEmpiricalNoExplore || flavor == ExtractFlavor::kAverageNoExplore;
  const ProfileFlavor tag =
      strip ? ProfileFlavor::kExplorationRemoved : (empirical ? ProfileFlavor::kEmpirical : ProfileFlavor::kAverage);
  StrategyProfile profile = StrategyProfile::uniform_for(*game_, tag);

  for (int id = 0; id < game_->num_nodes(); ++id) {
    const TreeNode* n = node(id);
    if (n == nullptr || n->visits == 0) continue;
    const double inv = 1.0 / static_cast<double>(n->visits);
    auto fill = [&](MixedStrategy& out, const std::vector<long long>& counts, const std::vector<double>& sums,
                    const SelectionPolicy& policy) {
      out.resize(counts.size());
      for (std::size_t a = 0; a < counts.size(); ++a) {
        out[a] = empirical ? static_cast<double>(counts[a]) * inv : sums[a] * inv;
      }
      if (strip && policy.exploration() > 0.0) out = remove_exploration(out, policy.exploration());
    };
    fill(profile.player1[static_cast<std::size_t>(id)], n->count1, n->strategy_sum1, *n->policy1);
    fill(profile.player2[static_cast<std::size_t>(id)], n->count2, n->strategy_sum2, *n->policy2);
  }
  return profile;
}

}  // namespace simove
