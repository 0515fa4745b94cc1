#include "simove/bandits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace simove {

void check_reward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw std::invalid_argument("reward must lie in [0,1], got " + std::to_string(reward));
  }
}

int step(SelectionPolicy& policy, std::optional<double> reward, Rng& rng) {
  if (reward) policy.update(*reward);
  return policy.select(rng);
}

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("exploration rate must lie in [0,1]");
}

void check_actions(int k) {
  if (k < 1) throw std::invalid_argument("policy needs at least one action");
}

}  // namespace

// ---------------------------------------------------------------- Exp3

Exp3::Exp3(int num_actions, double gamma) : gamma_(gamma) {
  check_actions(num_actions);
  check_gamma(gamma);
  gains_.assign(static_cast<std::size_t>(num_actions), 0.0);
  mixed_.assign(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
}

void Exp3::fill_distribution(std::vector<double>& out) const {
  const std::size_t k = gains_.size();
  const double eta = gamma_ / static_cast<double>(k);
  const double top = *std::max_element(gains_.begin(), gains_.end());
  out.resize(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = std::exp(eta * (gains_[i] - top));
    total += out[i];
  }
  const double uniform = gamma_ / static_cast<double>(k);
  for (double& p : out) p = (1.0 - gamma_) * (p / total) + uniform;
}

MixedStrategy Exp3::distribution() const {
  MixedStrategy out;
  fill_distribution(out);
  return out;
}

void Exp3::set_gains(std::vector<double> g) {
  if (g.size() != gains_.size()) throw std::invalid_argument("gain vector size mismatch");
  gains_ = std::move(g);
}

int Exp3::select(Rng& rng) {
  fill_distribution(mixed_);
  last_ = sample_index(rng, mixed_);
  return last_;
}

void Exp3::update(double reward) {
  check_reward(reward);
  if (last_ < 0) throw std::logic_error("Exp3::update called before select");
  const auto i = static_cast<std::size_t>(last_);
  gains_[i] += reward / mixed_[i];
  last_ = -1;
}

// ---------------------------------------------------------------- RM

RegretMatching::RegretMatching(int num_actions, double gamma) : gamma_(gamma) {
  check_actions(num_actions);
  check_gamma(gamma);
  regrets_.assign(static_cast<std::size_t>(num_actions), 0.0);
  mixed_.assign(static_cast<std::size_t>(num_actions), 1.0 / num_actions);
}

void RegretMatching::fill_distribution(std::vector<double>& out) const {
  const std::size_t k = regrets_.size();
  out.resize(k);
  double positive = 0.0;
  for (double r : regrets_) positive += std::max(r, 0.0);
  const double uniform = 1.0 / static_cast<double>(k);
  if (positive <= 0.0) {
    std::fill(out.begin(), out.end(), uniform);
    return;
  }
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = (1.0 - gamma_) * std::max(regrets_[i], 0.0) / positive + gamma_ * uniform;
  }
}

MixedStrategy RegretMatching::distribution() const {
  MixedStrategy out;
  fill_distribution(out);
  return out;
}

void RegretMatching::set_regrets(std::vector<double> r) {
  if (r.size() != regrets_.size()) throw std::invalid_argument("regret vector size mismatch");
  regrets_ = std::move(r);
}

int RegretMatching::select(Rng& rng) {
  fill_distribution(mixed_);
  last_ = sample_index(rng, mixed_);
  return last_;
}

void RegretMatching::update(double reward) {
  check_reward(reward);
  if (last_ < 0) throw std::logic_error("RegretMatching::update called before select");
  for (double& r : regrets_) r -= reward;
  const auto i = static_cast<std::size_t>(last_);
  regrets_[i] += reward / mixed_[i];
  last_ = -1;
}

// ---------------------------------------------------------------- A*

ExploreWrapper::ExploreWrapper(std::unique_ptr<SelectionPolicy> inner, double gamma)
    : inner_(std::move(inner)), gamma_(gamma) {
  if (!inner_) throw std::invalid_argument("explore wrapper needs an inner policy");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("explore wrapper gamma must lie in (0,1)");
  mixed_.assign(static_cast<std::size_t>(inner_->num_actions()), 1.0 / inner_->num_actions());
}

double ExploreWrapper::exploration() const {
  return 1.0 - (1.0 - gamma_) * (1.0 - inner_->exploration());
}

void ExploreWrapper::current_strategy(std::vector<double>& out) const {
  inner_->current_strategy(out);
  const double uniform = gamma_ / static_cast<double>(out.size());
  for (double& p : out) p = (1.0 - gamma_) * p + uniform;
}

int ExploreWrapper::select(Rng& rng) {
  ++steps_;
  current_strategy(mixed_);
  explored_last_ = unit_double(rng) < gamma_;
  if (explored_last_) {
    ++explored_;
    return uniform_index(rng, static_cast<int>(mixed_.size()));
  }
  return inner_->select(rng);
}

void ExploreWrapper::update(double reward) {
  check_reward(reward);
  if (!explored_last_) inner_->update(reward);
}

// ---------------------------------------------------------------- ledger

RegretLedger::RegretLedger(int num_actions) {
  check_actions(num_actions);
  cumulative_.assign(static_cast<std::size_t>(num_actions), 0.0);
}

void RegretLedger::update(std::span<const double> rewards, int chosen) {
  if (rewards.size() != cumulative_.size()) throw std::invalid_argument("ledger reward vector size mismatch");
  if (chosen < 0 || static_cast<std::size_t>(chosen) >= cumulative_.size()) {
    throw std::invalid_argument("ledger action out of range");
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) cumulative_[i] += rewards[i];
  realized_ += rewards[static_cast<std::size_t>(chosen)];
  ++t_;
}

double RegretLedger::best_cumulative() const { return *std::max_element(cumulative_.begin(), cumulative_.end()); }

// ---------------------------------------------------------------- factory

PolicyKind parse_policy_kind(std::string_view token) {
  if (token == "exp3") return PolicyKind::kExp3;
  if (token == "rm") return PolicyKind::kRegretMatching;
  if (token == "exp3*") return PolicyKind::kExp3Explore;
  if (token == "rm*") return PolicyKind::kRegretMatchingExplore;
  if (token == "cex") return PolicyKind::kCounterexample;
  throw std::invalid_argument("unknown policy '" + std::string(token) + "' (expected exp3, rm, exp3*, rm*, cex)");
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kExp3: return "exp3";
    case PolicyKind::kRegretMatching: return "rm";
    case PolicyKind::kExp3Explore: return "exp3*";
    case PolicyKind::kRegretMatchingExplore: return "rm*";
    case PolicyKind::kCounterexample: return "cex";
  }
  return "?";
}

PolicyFactory make_policy_factory(PolicyKind kind, double gamma) {
  if (kind == PolicyKind::kCounterexample) {
    throw std::invalid_argument("counterexample policies are built by make_counterexample_factory");
  }
  check_gamma(gamma);
  if ((kind == PolicyKind::kExp3Explore || kind == PolicyKind::kRegretMatchingExplore) && !(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("wrapped policies need gamma in (0,1)");
  }
  return [kind, gamma](const Game&, int, int, int k) -> std::unique_ptr<SelectionPolicy> {
    if (k == 1) return std::make_unique<SingleAction>();
    switch (kind) {
      case PolicyKind::kExp3: return std::make_unique<Exp3>(k, gamma);
      case PolicyKind::kRegretMatching: return std::make_unique<RegretMatching>(k, gamma);
      case PolicyKind::kExp3Explore:
        return std::make_unique<ExploreWrapper>(std::make_unique<Exp3>(k, gamma), gamma);
      case PolicyKind::kRegretMatchingExplore:
        return std::make_unique<ExploreWrapper>(std::make_unique<RegretMatching>(k, gamma), gamma);
      default: break;
    }
    throw std::logic_error("unreachable policy kind");
  };
}

}  // namespace simove
