#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "simove/game.hpp"

namespace simove {

struct MatrixSolution {
  double value = 0.0;
  MixedStrategy row;  // player 1 (maximizer)
  MixedStrategy col;  // player 2 (minimizer)
};

// Exact Nash equilibrium of a zero-sum matrix game via the simplex method.
// The returned profile is an epsilon-equilibrium with epsilon around 1e-12
// for the matrix sizes used here.
MatrixSolution solve_matrix_game(const MatrixGame& m);

// Payoff of player 1 when the row player commits to `row` and the column
// player best-responds (min over pure columns), and the symmetric quantity.
double value_against_best_column(const MatrixGame& m, std::span<const double> row);
double value_against_best_row(const MatrixGame& m, std::span<const double> col);

// Subgame values v^h for every node, plus the stage-matrix equilibrium at
// every inner node (empty strategies elsewhere).
struct SolvedGame {
  std::vector<double> values;
  std::vector<MixedStrategy> row_strategy;
  std::vector<MixedStrategy> col_strategy;

  double root_value(const Game& g) const { return values[static_cast<std::size_t>(g.root())]; }
  // Subgame-perfect equilibrium profile assembled from the stage solutions.
  StrategyProfile equilibrium_profile(const Game& g) const;
};

SolvedGame compute_subgame_values(const Game& g);

// Stage matrix (v^h_ij) of inner node `id` built from the given node values.
MatrixGame stage_matrix(const Game& g, int id, const std::vector<double>& values);

// sum_z pi^sigma(z) u_1(z). Throws IncompleteProfileError when a node reached
// with positive probability has no strategy for one of the players.
double expected_utility(const Game& g, const StrategyProfile& profile);

// Value to player 1 when `fixed_player` (0 or 1) plays its part of `profile`
// and the other player best-responds at every state. For fixed_player == 0
// this is u_1(sigma_1, br); for fixed_player == 1 it is u_1(br, sigma_2).
// Ties in the responder's choice resolve to the lowest action index.
double best_response_value(const Game& g, int fixed_player, const StrategyProfile& profile);

struct Exploitability {
  double player1 = 0.0;  // v - u(sigma_1, br)
  double player2 = 0.0;  // u(br, sigma_2) - v
  double sum() const { return player1 + player2; }
};

Exploitability exploitability(const Game& g, double game_value, const StrategyProfile& profile);

// Strips the uniform gamma-component from an average strategy:
// (sigma - gamma * uniform) / (1 - gamma), clamped at zero and renormalized.
MixedStrategy remove_exploration(std::span<const double> average, double gamma);

class IncompleteProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simove
