#include "simove/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace simove {

namespace {

constexpr double kPivotTol = 1e-12;

// Dense tableau simplex for  max 1'y  s.t.  A y <= 1, y >= 0  with A > 0.
// Bland's rule on both the entering and leaving choice keeps it from cycling
// on degenerate stage matrices (Goofspiel produces many tied entries).
class Tableau {
 public:
  Tableau(const MatrixGame& m, double shift) : rows_(m.rows()), vars_(m.cols()) {
    width_ = vars_ + rows_ + 1;
    cells_.assign(static_cast<std::size_t>((rows_ + 1) * width_), 0.0);
    basis_.resize(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < vars_; ++j) at(i, j) = m.at(i, j) + shift;
      at(i, vars_ + i) = 1.0;
      at(i, width_ - 1) = 1.0;
      basis_[static_cast<std::size_t>(i)] = vars_ + i;
    }
    for (int j = 0; j < vars_; ++j) at(rows_, j) = -1.0;
  }

  void solve() {
    const int max_pivots = 50 * (rows_ + vars_) + 1000;
    for (int iter = 0; iter < max_pivots; ++iter) {
      int enter = -1;
      for (int c = 0; c < width_ - 1; ++c) {
        if (at(rows_, c) < -kPivotTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return;

      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a > kPivotTol) best_ratio = std::min(best_ratio, at(r, width_ - 1) / a);
      }
      int leave = -1;
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotTol || at(r, width_ - 1) / a > best_ratio + kPivotTol) continue;
        if (leave < 0 || basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)]) leave = r;
      }
      // A > 0 bounds the feasible region, so an entering column always has a
      // positive entry.
      if (leave < 0) throw std::logic_error("simplex: unbounded matrix-game LP");
      pivot(leave, enter);
    }
    throw std::logic_error("simplex: pivot limit exceeded");
  }

  // Primal solution y and dual solution x of the LP.
  std::vector<double> primal() const {
    std::vector<double> y(static_cast<std::size_t>(vars_), 0.0);
    for (int r = 0; r < rows_; ++r) {
      const int b = basis_[static_cast<std::size_t>(r)];
      if (b < vars_) y[static_cast<std::size_t>(b)] = at(r, width_ - 1);
    }
    return y;
  }
  std::vector<double> dual() const {
    std::vector<double> x(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) x[static_cast<std::size_t>(i)] = at(rows_, vars_ + i);
    return x;
  }

 private:
  double& at(int r, int c) { return cells_[static_cast<std::size_t>(r * width_ + c)]; }
  double at(int r, int c) const { return cells_[static_cast<std::size_t>(r * width_ + c)]; }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c < width_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  int rows_;
  int vars_;
  int width_ = 0;
  std::vector<double> cells_;
  std::vector<int> basis_;
};

MixedStrategy normalized(std::vector<double> v) {
  for (double& p : v) p = std::max(p, 0.0);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0)) return uniform_strategy(static_cast<int>(v.size()));
  for (double& p : v) p /= total;
  return v;
}

double bilinear(const MatrixGame& m, std::span<const double> row, std::span<const double> col) {
  double total = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    if (row[static_cast<std::size_t>(i)] == 0.0) continue;
    double acc = 0.0;
    for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j) * col[static_cast<std::size_t>(j)];
    total += row[static_cast<std::size_t>(i)] * acc;
  }
  return total;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double value_against_best_column(const MatrixGame& m, std::span<const double> row) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m.cols(); ++j) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i) acc += row[static_cast<std::size_t>(i)] * m.at(i, j);
    best = std::min(best, acc);
  }
  return best;
}

double value_against_best_row(const MatrixGame& m, std::span<const double> col) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j) * col[static_cast<std::size_t>(j)];
    best = std::max(best, acc);
  }
  return best;
}

MatrixSolution solve_matrix_game(const MatrixGame& m) {
  MatrixSolution sol;
  if (m.rows() == 1 || m.cols() == 1) {
    // One player has a single action; the other simply optimizes.
    sol.row.assign(static_cast<std::size_t>(m.rows()), 0.0);
    sol.col.assign(static_cast<std::size_t>(m.cols()), 0.0);
    if (m.rows() == 1) {
      int best = 0;
      for (int j = 1; j < m.cols(); ++j)
        if (m.at(0, j) < m.at(0, best)) best = j;
      sol.row[0] = 1.0;
      sol.col[static_cast<std::size_t>(best)] = 1.0;
      sol.value = m.at(0, best);
    } else {
      int best = 0;
      for (int i = 1; i < m.rows(); ++i)
        if (m.at(i, 0) > m.at(best, 0)) best = i;
      sol.col[0] = 1.0;
      sol.row[static_cast<std::size_t>(best)] = 1.0;
      sol.value = m.at(best, 0);
    }
    return sol;
  }

  // Shifting every entry by 1 makes the LP matrix strictly positive without
  // changing the equilibrium strategies.
  constexpr double kShift = 1.0;
  Tableau t(m, kShift);
  t.solve();
  sol.col = normalized(t.primal());
  sol.row = normalized(t.dual());
  sol.value = bilinear(m, sol.row, sol.col);
  return sol;
}

MatrixGame stage_matrix(const Game& g, int id, const std::vector<double>& values) {
  const GameNode& n = g.node(id);
  std::vector<double> payoffs(n.children.size());
  for (std::size_t k = 0; k < n.children.size(); ++k) {
    payoffs[k] = clamp01(values[static_cast<std::size_t>(n.children[k])]);
  }
  return MatrixGame(n.rows, n.cols, std::move(payoffs));
}

SolvedGame compute_subgame_values(const Game& g) {
  SolvedGame out;
  const auto count = static_cast<std::size_t>(g.num_nodes());
  out.values.assign(count, 0.0);
  out.row_strategy.resize(count);
  out.col_strategy.resize(count);
  for (int id = 0; id < g.num_nodes(); ++id) {
    const GameNode& n = g.node(id);
    const auto k = static_cast<std::size_t>(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        out.values[k] = n.utility;
        break;
      case NodeKind::kChance: {
        double v = 0.0;
        for (std::size_t c = 0; c < n.children.size(); ++c) {
          v += n.chance_probs[c] * out.values[static_cast<std::size_t>(n.children[c])];
        }
        out.values[k] = clamp01(v);
        break;
      }
      case NodeKind::kInner: {
        MatrixSolution s = solve_matrix_game(stage_matrix(g, id, out.values));
        out.values[k] = clamp01(s.value);
        out.row_strategy[k] = std::move(s.row);
        out.col_strategy[k] = std::move(s.col);
        break;
      }
    }
  }
  return out;
}

StrategyProfile SolvedGame::equilibrium_profile(const Game& g) const {
  StrategyProfile p = StrategyProfile::empty_for(g, ProfileFlavor::kExact);
  p.player1 = row_strategy;
  p.player2 = col_strategy;
  return p;
}

double expected_utility(const Game& g, const StrategyProfile& profile) {
  std::vector<double> reach(static_cast<std::size_t>(g.num_nodes()), 0.0);
  reach[static_cast<std::size_t>(g.root())] = 1.0;
  double total = 0.0;
  for (int id = g.root(); id >= 0; --id) {
    const double r = reach[static_cast<std::size_t>(id)];
    if (r == 0.0) continue;
    const GameNode& n = g.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        total += r * n.utility;
        break;
      case NodeKind::kChance:
        for (std::size_t c = 0; c < n.children.size(); ++c) {
          reach[static_cast<std::size_t>(n.children[c])] += r * n.chance_probs[c];
        }
        break;
      case NodeKind::kInner: {
        const auto& s1 = profile.player1[static_cast<std::size_t>(id)];
        const auto& s2 = profile.player2[static_cast<std::size_t>(id)];
        if (s1.size() != static_cast<std::size_t>(n.rows) || s2.size() != static_cast<std::size_t>(n.cols)) {
          throw IncompleteProfileError("no strategy at reachable node " + std::to_string(id));
        }
        for (int i = 0; i < n.rows; ++i) {
          const double ri = r * s1[static_cast<std::size_t>(i)];
          if (ri == 0.0) continue;
          for (int j = 0; j < n.cols; ++j) {
            reach[static_cast<std::size_t>(n.child(i, j))] += ri * s2[static_cast<std::size_t>(j)];
          }
        }
        break;
      }
    }
  }
  return clamp01(total);
}

double best_response_value(const Game& g, int fixed_player, const StrategyProfile& profile) {
  if (fixed_player != 0 && fixed_player != 1) throw std::invalid_argument("player must be 0 or 1");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto& fixed = profile.of(fixed_player);
  std::vector<double> v(static_cast<std::size_t>(g.num_nodes()), 0.0);

  for (int id = 0; id < g.num_nodes(); ++id) {
    const GameNode& n = g.node(id);
    double& out = v[static_cast<std::size_t>(id)];
    switch (n.kind) {
      case NodeKind::kTerminal:
        out = n.utility;
        break;
      case NodeKind::kChance: {
        double acc = 0.0;
        for (std::size_t c = 0; c < n.children.size(); ++c) {
          if (n.chance_probs[c] == 0.0) continue;
          acc += n.chance_probs[c] * v[static_cast<std::size_t>(n.children[c])];
        }
        out = acc;
        break;
      }
      case NodeKind::kInner: {
        const auto& s = fixed[static_cast<std::size_t>(id)];
        const int own = fixed_player == 0 ? n.rows : n.cols;
        const int other = fixed_player == 0 ? n.cols : n.rows;
        if (s.size() != static_cast<std::size_t>(own)) {
          out = nan;
          break;
        }
        // The responder picks the pure action that is best against the
        // fixed mixture; strict comparison keeps the lowest index on ties.
        double best = fixed_player == 0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
        for (int b = 0; b < other; ++b) {
          double acc = 0.0;
          for (int a = 0; a < own; ++a) {
            const double p = s[static_cast<std::size_t>(a)];
            if (p == 0.0) continue;
            const int child = fixed_player == 0 ? n.child(a, b) : n.child(b, a);
            acc += p * v[static_cast<std::size_t>(child)];
          }
          if (std::isnan(acc)) {
            best = nan;
            break;
          }
          if (fixed_player == 0 ? acc < best : acc > best) best = acc;
        }
        out = best;
        break;
      }
    }
  }
  const double root = v[static_cast<std::size_t>(g.root())];
  if (std::isnan(root)) {
    throw IncompleteProfileError("best response reaches a node with no strategy for player " +
                                 std::to_string(fixed_player + 1));
  }
  return clamp01(root);
}

Exploitability exploitability(const Game& g, double game_value, const StrategyProfile& profile) {
  Exploitability e;
  e.player1 = game_value - best_response_value(g, 0, profile);
  e.player2 = best_response_value(g, 1, profile) - game_value;
  return e;
}

MixedStrategy remove_exploration(std::span<const double> average, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("exploration rate must lie in [0,1)");
  }
  const auto k = static_cast<double>(average.size());
  if (average.empty()) throw std::invalid_argument("empty strategy");
  std::vector<double> p(average.size());
  bool clamped = false;
  for (std::size_t i = 0; i < average.size(); ++i) {
    p[i] = (average[i] - gamma / k) / (1.0 - gamma);
    if (p[i] < 0.0) {
      p[i] = 0.0;
      clamped = true;
    }
  }
  if (!clamped) return p;
  return normalized(std::move(p));
}

}  // namespace simove
