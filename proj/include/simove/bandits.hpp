#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simove/game.hpp"
#include "simove/rng.hpp"

namespace simove {

// A per-node, per-player bandit. The protocol is select() followed by exactly
// one update() with the reward of the selected action, repeated.
class SelectionPolicy {
 public:
  virtual ~SelectionPolicy() = default;

  virtual int num_actions() const = 0;
  // Samples the next action. The distribution it was drawn from stays
  // available through last_strategy() until the next select().
  virtual int select(Rng& rng) = 0;
  // Reward in [0,1] for the most recently selected action.
  virtual void update(double reward) = 0;
  virtual std::span<const double> last_strategy() const = 0;
  // The distribution the next select() would sample from.
  virtual void current_strategy(std::vector<double>& out) const = 0;
  // Probability mass the policy spreads uniformly over all actions; used to
  // strip exploration from average strategies.
  virtual double exploration() const = 0;
};

// Feeds the previous reward (if any) and samples the next action.
int step(SelectionPolicy& policy, std::optional<double> reward, Rng& rng);

void check_reward(double reward);

class Exp3 final : public SelectionPolicy {
 public:
  Exp3(int num_actions, double gamma);

  int num_actions() const override { return static_cast<int>(gains_.size()); }
  int select(Rng& rng) override;
  void update(double reward) override;
  std::span<const double> last_strategy() const override { return mixed_; }
  double exploration() const override { return gamma_; }

  void current_strategy(std::vector<double>& out) const override { fill_distribution(out); }
  // p' computed from the current gain estimates.
  MixedStrategy distribution() const;
  const std::vector<double>& gains() const { return gains_; }
  void set_gains(std::vector<double> g);

 private:
  void fill_distribution(std::vector<double>& out) const;

  double gamma_;
  std::vector<double> gains_;
  std::vector<double> mixed_;
  int last_ = -1;
};

class RegretMatching final : public SelectionPolicy {
 public:
  RegretMatching(int num_actions, double gamma);

  int num_actions() const override { return static_cast<int>(regrets_.size()); }
  int select(Rng& rng) override;
  void update(double reward) override;
  std::span<const double> last_strategy() const override { return mixed_; }
  double exploration() const override { return gamma_; }

  void current_strategy(std::vector<double>& out) const override { fill_distribution(out); }
  MixedStrategy distribution() const;
  const std::vector<double>& regrets() const { return regrets_; }
  void set_regrets(std::vector<double> r);

 private:
  void fill_distribution(std::vector<double>& out) const;

  double gamma_;
  std::vector<double> regrets_;
  std::vector<double> mixed_;
  int last_ = -1;
};

// A*: with probability gamma play uniformly without touching the inner
// policy, otherwise delegate to it.
class ExploreWrapper final : public SelectionPolicy {
 public:
  ExploreWrapper(std::unique_ptr<SelectionPolicy> inner, double gamma);

  int num_actions() const override { return inner_->num_actions(); }
  int select(Rng& rng) override;
  void update(double reward) override;
  std::span<const double> last_strategy() const override { return mixed_; }
  double exploration() const override;
  void current_strategy(std::vector<double>& out) const override;

  const SelectionPolicy& inner() const { return *inner_; }
  long long explored_steps() const { return explored_; }
  long long total_steps() const { return steps_; }

 private:
  std::unique_ptr<SelectionPolicy> inner_;
  double gamma_;
  std::vector<double> mixed_;
  bool explored_last_ = false;
  long long explored_ = 0;
  long long steps_ = 0;
};

// The only option when a player has a single action.
class SingleAction final : public SelectionPolicy {
 public:
  int num_actions() const override { return 1; }
  int select(Rng&) override { return 0; }
  void update(double reward) override { check_reward(reward); }
  std::span<const double> last_strategy() const override { return one_; }
  void current_strategy(std::vector<double>& out) const override { out.assign(1, 1.0); }
  double exploration() const override { return 0.0; }

 private:
  std::vector<double> one_{1.0};
};

// Full-information regret bookkeeping for one decision point.
class RegretLedger {
 public:
  explicit RegretLedger(int num_actions);

  void update(std::span<const double> rewards, int chosen);

  long long steps() const { return t_; }
  double realized() const { return realized_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double best_cumulative() const;
  double regret() const { return best_cumulative() - realized_; }
  double average_regret() const { return t_ == 0 ? 0.0 : regret() / static_cast<double>(t_); }

 private:
  std::vector<double> cumulative_;
  double realized_ = 0.0;
  long long t_ = 0;
};

// Builds the policy for `player` (0 or 1) at inner node `node` with
// `num_actions` actions.
using PolicyFactory = std::function<std::unique_ptr<SelectionPolicy>(const Game&, int node, int player, int num_actions)>;

enum class PolicyKind { kExp3, kRegretMatching, kExp3Explore, kRegretMatchingExplore, kCounterexample };

PolicyKind parse_policy_kind(std::string_view token);
std::string to_string(PolicyKind kind);

// Factory for the four generic kinds. Single-action decisions always get
// SingleAction. The wrapped kinds use gamma both for the wrapper and for
// the inner policy.
PolicyFactory make_policy_factory(PolicyKind kind, double gamma);

}  // namespace simove
