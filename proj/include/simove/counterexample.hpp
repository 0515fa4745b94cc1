#pragma once

#include <array>
#include <stdexcept>

#include "simove/bandits.hpp"

namespace simove {

// Raised when a payoff cannot be explained by the counterexample game.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CooperationParams {
  double epsilon = 0.05;
  long long b0 = 1000;  // buffer phase n lasts b0 * 2^n steps
  bool checks = true;   // disable to observe the bare cooperation cycle
};

// Shared phase machinery: buffer phases run regret matching with
// exploration epsilon; cooperation phases follow a fixed pattern with random
// checks and end when the running cheat estimate threatens to exceed
// 2 * epsilon.
class CooperationPolicy : public SelectionPolicy {
 public:
  int num_actions() const override { return 2; }
  std::span<const double> last_strategy() const override { return mixed_; }
  double exploration() const override { return 0.0; }

  bool in_buffer() const { return buffer_left_ > 0; }
  int phase() const { return phase_; }
  long long buffer_steps() const { return buffer_steps_; }
  long long cooperation_steps() const { return coop_total_; }
  int cooperation_ends() const { return ends_; }
  // Steps into the current cooperation phase, and its cheat estimate.
  long long cooperation_time() const { return t_; }
  double cheat_estimate() const { return t_ == 0 ? 0.0 : own_cheat_ / static_cast<double>(t_); }

 protected:
  CooperationPolicy(const CooperationParams& params, double epsilon);

  // Called once per cooperation step with that step's cheat observation.
  void finish_cooperation_step(double cheat);
  void finish_buffer_step(double reward);
  int buffer_select(Rng& rng);
  void set_mixed(int pattern_action, double check_prob);

  CooperationParams params_;
  double eps_;
  std::array<double, 2> mixed_{0.5, 0.5};
  RegretMatching inner_;
  // Starts a cooperation phase; derived classes reset their pattern state.
  virtual void on_cooperation_start() = 0;

 private:
  int phase_ = 0;
  long long buffer_left_;
  long long buffer_steps_ = 0;
  long long coop_total_ = 0;
  int ends_ = 0;
  long long t_ = 0;
  double own_cheat_ = 0.0;
};

// Node J policies. Role 0 (player 1) repeats U,U,D,D and expects L,R,R,L;
// role 1 (player 2) repeats L,R,R,L and expects U,U,D,D. The opponent's
// action is recovered from the payoff, so each side can replay the other's
// cheat estimate. A deviation looks the same as a check from outside, which
// makes the replayed estimate equal the own one and keeps both sides'
// phase switches in lockstep.
class CooperationPolicyJ final : public CooperationPolicy {
 public:
  CooperationPolicyJ(int role, const CooperationParams& params);

  int select(Rng& rng) override;
  void update(double reward) override;
  void current_strategy(std::vector<double>& out) const override;

  int position() const { return pos_; }

 private:
  void on_cooperation_start() override { pos_ = 0; }

  int role_;
  int pos_ = 0;
  int last_ = -1;
  bool checked_ = false;
};

// Node I policy for player 1: repeats Y,X,X,Y expecting payoff 0 for X and an
// alternating 1,0,1,0 stream for Y. A check plays the flipped action twice
// and then resumes the pattern where it stopped. Uses 2 * epsilon in place
// of epsilon.
class CooperationPolicyI final : public CooperationPolicy {
 public:
  explicit CooperationPolicyI(const CooperationParams& params);

  int select(Rng& rng) override;
  void update(double reward) override;
  void current_strategy(std::vector<double>& out) const override;

  int position() const { return pos_; }

 private:
  void on_cooperation_start() override;

  int pos_ = 0;
  int last_ = -1;
  int check_left_ = 0;  // remaining steps of an inserted check
  int check_action_ = 0;
  bool check_failed_ = false;
  double last_y_ = 0.0;      // most recent Y payoff
  double expected_y_ = 1.0;  // Y payoff expected next in cooperation
};

// Policies for the counterexample game: CooperationPolicyI at the root for
// player 1, CooperationPolicyJ at J for both players, and SingleAction for
// player 2 at the root. Throws std::invalid_argument for any other game.
PolicyFactory make_counterexample_factory(const CooperationParams& params);

}  // namespace simove
