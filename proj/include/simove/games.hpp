#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "simove/game.hpp"

namespace simove {

// Goofspiel with the nature sequence known in advance (no chance nodes).
// `nature[r]` is the card nature reveals in round r.
struct GoofspielSpec {
  int deck = 4;
  std::vector<int> nature;
};

struct OshiZumoSpec {
  int half_width = 2;  // K: the board has 2K+1 locations
  int coins = 5;       // N
};

struct RandomGameSpec {
  int branching = 2;  // B actions per player
  int depth = 2;      // D
  std::uint64_t seed = 0;
};

// Chain of decision nodes where stopping early looks attractive to a
// bandit but continuing to the end pays 1.
struct AntiSpec {
  int depth = 5;
};

struct LinBoundSpec {
  int depth = 4;
  double gamma = 0.12;
  double eta = 0.001;
};

struct CounterexampleSpec {};

using GameVariant =
    std::variant<GoofspielSpec, OshiZumoSpec, RandomGameSpec, AntiSpec, LinBoundSpec, CounterexampleSpec>;

struct GameSpec {
  GameVariant variant;

  // Parses `goofspiel:d=5,nature=desc`, `oshizumo:K=2,N=5`,
  // `random:B=3,D=3,seed=7`, `anti:D=5`, `linbound:D=4,gamma=0.12,eta=0.001`
  // or `counterexample`. Goofspiel's nature accepts `desc`, `asc` or an
  // explicit order such as `3/1/0/2`.
  static GameSpec parse(std::string_view text);
  std::string to_string() const;
};

Game make_game(const GameSpec& spec);

Game make_goofspiel(int deck, const std::vector<int>& nature);
Game make_oshi_zumo(int half_width, int coins);
Game make_random_game(int branching, int depth, std::uint64_t seed);
Game make_anti(int depth);
Game make_linbound(int depth, double gamma, double eta);
Game make_counterexample_game();

// Stop rewards of the linbound chain, indexed from the node next to the final
// one: u[0] = 1 - gamma/2 + eta and u[k+1] = (1 - gamma/3) u[k].
std::vector<double> linbound_rewards(int depth, double gamma, double eta);

// Action indices of the counterexample game.
namespace cex {
inline constexpr int kX = 0;  // stop at I, payoff 0
inline constexpr int kY = 1;  // continue to J
inline constexpr int kU = 0;
inline constexpr int kD = 1;
inline constexpr int kL = 0;
inline constexpr int kR = 1;
}  // namespace cex

}  // namespace simove
