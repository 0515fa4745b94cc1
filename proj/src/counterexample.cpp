#include "simove/counterexample.hpp"

#include <string>

#include "simove/games.hpp"

namespace simove {

namespace {

// Patterns indexed by role: player 1 at J plays U,U,D,D, player 2 L,R,R,L.
constexpr int kPatternJ[2][4] = {{cex::kU, cex::kU, cex::kD, cex::kD}, {cex::kL, cex::kR, cex::kR, cex::kL}};
constexpr int kPatternI[4] = {cex::kY, cex::kX, cex::kX, cex::kY};

bool is_binary(double x) { return x == 0.0 || x == 1.0; }

}  // namespace

CooperationPolicy::CooperationPolicy(const CooperationParams& params, double epsilon)
    : params_(params), eps_(epsilon), inner_(2, params.epsilon), buffer_left_(params.b0) {
  if (!(params.epsilon > 0.0 && params.epsilon < 0.25)) {
    throw std::invalid_argument("cooperation epsilon must lie in (0, 0.25)");
  }
  if (params.b0 < 1) throw std::invalid_argument("buffer length b0 must be >= 1");
}

void CooperationPolicy::set_mixed(int pattern_action, double check_prob) {
  mixed_[static_cast<std::size_t>(pattern_action)] = 1.0 - check_prob;
  mixed_[static_cast<std::size_t>(1 - pattern_action)] = check_prob;
}

int CooperationPolicy::buffer_select(Rng& rng) {
  const int a = inner_.select(rng);
  const auto p = inner_.last_strategy();
  mixed_ = {p[0], p[1]};
  return a;
}

void CooperationPolicy::finish_buffer_step(double reward) {
  inner_.update(reward);
  ++buffer_steps_;
  if (--buffer_left_ == 0) {
    t_ = 0;
    own_cheat_ = 0.0;
    on_cooperation_start();
  }
}

void CooperationPolicy::finish_cooperation_step(double cheat) {
  ++t_;
  ++coop_total_;
  own_cheat_ += cheat;
  const double b = static_cast<double>(params_.b0) * static_cast<double>(1LL << phase_);
  const double t = static_cast<double>(t_);
  const bool armed = eps_ * b / (b + t) + t / (b + t) >= 2.0 * eps_;
  if (!armed) return;
  // End if one more failed check would push the estimate above 2 eps.
  if ((own_cheat_ + 1.0 / eps_) / (t + 1.0) > 2.0 * eps_) {
    ++phase_;
    ++ends_;
    buffer_left_ = params_.b0 << phase_;
  }
}

// ---------------------------------------------------------------- J

CooperationPolicyJ::CooperationPolicyJ(int role, const CooperationParams& params)
    : CooperationPolicy(params, params.epsilon), role_(role) {
  if (role != 0 && role != 1) throw std::invalid_argument("J role must be 0 or 1");
}

void CooperationPolicyJ::current_strategy(std::vector<double>& out) const {
  if (in_buffer()) {
    inner_.current_strategy(out);
    return;
  }
  const int p = kPatternJ[role_][pos_];
  const double c = params_.checks ? eps_ : 0.0;
  out.assign(2, c);
  out[static_cast<std::size_t>(p)] = 1.0 - c;
}

int CooperationPolicyJ::select(Rng& rng) {
  if (in_buffer()) {
    last_ = buffer_select(rng);
    return last_;
  }
  const int p = kPatternJ[role_][pos_];
  checked_ = params_.checks && unit_double(rng) < eps_;
  set_mixed(p, params_.checks ? eps_ : 0.0);
  last_ = checked_ ? 1 - p : p;
  return last_;
}

void CooperationPolicyJ::update(double reward) {
  check_reward(reward);
  if (last_ < 0) throw std::logic_error("update called before select");
  if (in_buffer()) {
    last_ = -1;
    finish_buffer_step(reward);
    return;
  }
  if (!is_binary(reward)) {
    throw ProtocolError("payoff " + std::to_string(reward) + " does not identify the opponent's action at J");
  }
  // Matching pennies: player 1 scores 1 exactly when the actions match.
  const double x1 = role_ == 0 ? reward : 1.0 - reward;
  const int opponent = x1 == 1.0 ? last_ : 1 - last_;
  const bool opponent_deviated = opponent != kPatternJ[1 - role_][pos_];
  const double cheat = checked_ && opponent_deviated ? 1.0 / eps_ : 0.0;
  pos_ = (pos_ + 1) % 4;
  last_ = -1;
  finish_cooperation_step(cheat);
}

// ---------------------------------------------------------------- I

CooperationPolicyI::CooperationPolicyI(const CooperationParams& params)
    : CooperationPolicy(params, 2.0 * params.epsilon) {}

void CooperationPolicyI::on_cooperation_start() {
  // Align the pattern with the Y payoff stream: position 0 expects a 1 from
  // Y, position 3 expects a 0.
  expected_y_ = 1.0 - last_y_;
  pos_ = expected_y_ == 1.0 ? 0 : 3;
  check_left_ = 0;
}

void CooperationPolicyI::current_strategy(std::vector<double>& out) const {
  if (in_buffer()) {
    inner_.current_strategy(out);
    return;
  }
  out.assign(2, 0.0);
  if (check_left_ > 0) {
    out[static_cast<std::size_t>(check_action_)] = 1.0;
    return;
  }
  const int p = kPatternI[pos_];
  const double c = params_.checks ? eps_ : 0.0;
  out[static_cast<std::size_t>(p)] = 1.0 - c;
  out[static_cast<std::size_t>(1 - p)] = c;
}

int CooperationPolicyI::select(Rng& rng) {
  if (in_buffer()) {
    last_ = buffer_select(rng);
    return last_;
  }
  if (check_left_ > 0) {
    mixed_ = {0.0, 0.0};
    mixed_[static_cast<std::size_t>(check_action_)] = 1.0;
    last_ = check_action_;
    return last_;
  }
  const int p = kPatternI[pos_];
  set_mixed(p, params_.checks ? eps_ : 0.0);
  if (params_.checks && unit_double(rng) < eps_) {
    check_action_ = 1 - p;
    check_left_ = 2;
    check_failed_ = false;
    last_ = check_action_;
    return last_;
  }
  last_ = p;
  return last_;
}

void CooperationPolicyI::update(double reward) {
  check_reward(reward);
  if (last_ < 0) throw std::logic_error("update called before select");
  const int played = last_;
  last_ = -1;
  if (in_buffer()) {
    if (played == cex::kY) last_y_ = reward;
    finish_buffer_step(reward);
    return;
  }
  bool matches;
  if (played == cex::kY) {
    if (!is_binary(reward)) throw ProtocolError("payoff " + std::to_string(reward) + " after Y is not 0 or 1");
    matches = reward == expected_y_;
    expected_y_ = 1.0 - expected_y_;
    last_y_ = reward;
  } else {
    if (reward != 0.0) throw ProtocolError("payoff after X must be 0");
    matches = true;
  }

  if (check_left_ > 0) {
    check_failed_ = check_failed_ || !matches;
    if (--check_left_ > 0) {
      finish_cooperation_step(0.0);
      return;
    }
    finish_cooperation_step(check_failed_ ? 1.0 / eps_ : 0.0);
    return;
  }
  pos_ = (pos_ + 1) % 4;
  finish_cooperation_step(0.0);
}

// ---------------------------------------------------------------- factory

PolicyFactory make_counterexample_factory(const CooperationParams& params) {
  // Validate eagerly so bad parameters fail before any search starts.
  CooperationPolicyI probe(params);
  (void)probe;
  return [params](const Game& g, int node, int player, int k) -> std::unique_ptr<SelectionPolicy> {
    const GameNode& root = g.node(g.root());
    const bool shaped = root.kind == NodeKind::kInner && root.rows == 2 && root.cols == 1 &&
                        g.node(root.child(cex::kY, 0)).kind == NodeKind::kInner &&
                        g.node(root.child(cex::kY, 0)).rows == 2 && g.node(root.child(cex::kY, 0)).cols == 2;
    if (!shaped) throw std::invalid_argument("counterexample policies only apply to the counterexample game");
    if (node == g.root()) {
      if (player == 0) return std::make_unique<CooperationPolicyI>(params);
      return std::make_unique<SingleAction>();
    }
    if (node == root.child(cex::kY, 0) && k == 2) return std::make_unique<CooperationPolicyJ>(player, params);
    throw std::invalid_argument("counterexample factory: unexpected node " + std::to_string(node));
  };
}

}  // namespace simove
