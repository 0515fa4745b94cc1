#include <gtest/gtest.h>

#include <functional>

#include "simove/games.hpp"
#include "simove/solver.hpp"

using namespace simove;

namespace {

// Follows a sequence of joint actions (as action indices) from the root.
int walk(const Game& g, const std::vector<std::pair<int, int>>& moves) {
  int id = g.root();
  for (auto [i, j] : moves) {
    const GameNode& n = g.node(id);
    EXPECT_EQ(n.kind, NodeKind::kInner);
    EXPECT_LT(i, n.rows);
    EXPECT_LT(j, n.cols);
    id = n.child(i, j);
  }
  return id;
}

double utility_after(const Game& g, const std::vector<std::pair<int, int>>& moves) {
  const GameNode& n = g.node(walk(g, moves));
  EXPECT_EQ(n.kind, NodeKind::kTerminal);
  return n.utility;
}

}  // namespace

TEST(Goofspiel, HandTrace) {
  // Nature reveals card 1 then card 0. Player 1 wins card 1, player 2 card 0.
  const Game g = make_goofspiel(2, {1, 0});
  EXPECT_DOUBLE_EQ(utility_after(g, {{1, 0}, {0, 0}}), 1.0);
}

TEST(Goofspiel, MirroredPlayIsADraw) {
  for (int d = 2; d <= 4; ++d) {
    const Game g = make_game(GameSpec::parse("goofspiel:d=" + std::to_string(d)));
    std::vector<std::pair<int, int>> moves;
    for (int r = 0; r < d; ++r) moves.emplace_back(0, 0);
    EXPECT_DOUBLE_EQ(utility_after(g, moves), 0.5);
  }
}

TEST(Goofspiel, ActionSetsShrinkEachRound) {
  const int d = 4;
  const Game g = make_goofspiel(d, {3, 2, 1, 0});
  std::function<void(int, int)> check = [&](int id, int round) {
    const GameNode& n = g.node(id);
    if (n.kind == NodeKind::kTerminal) {
      EXPECT_EQ(round, d);
      return;
    }
    EXPECT_EQ(n.rows, d - round);
    EXPECT_EQ(n.cols, d - round);
    for (int c : n.children) check(c, round + 1);
  };
  check(g.root(), 0);
  EXPECT_EQ(g.depth(), d);
}

TEST(Goofspiel, SymmetricValueIsHalf) {
  for (const char* spec : {"goofspiel:d=3,nature=desc", "goofspiel:d=4,nature=desc", "goofspiel:d=4,nature=2/0/3/1"}) {
    const Game g = make_game(GameSpec::parse(spec));
    EXPECT_NEAR(compute_subgame_values(g).root_value(g), 0.5, 1e-9) << spec;
  }
}

TEST(Goofspiel, RejectsBadNature) {
  EXPECT_THROW(make_goofspiel(3, {0, 1}), std::invalid_argument);
  EXPECT_THROW(make_goofspiel(3, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(make_goofspiel(3, {0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(GameSpec::parse("goofspiel:d=3,nature=0/1"), std::invalid_argument);
}

TEST(OshiZumo, LoneHighBidThenPushedOut) {
  const Game g = make_oshi_zumo(2, 5);
  // Player 1 bids 5 against 1, then sits broke while player 2 bids 1 four
  // times and pushes the wrestler off player 1's side.
  EXPECT_DOUBLE_EQ(utility_after(g, {{4, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}), 0.0);
}

TEST(OshiZumo, BothBrokeOnPlayerTwosSide) {
  const Game g = make_oshi_zumo(2, 5);
  // Bids (1,3), (2,1), (2,1): positions 1, 2, 3 with both players broke.
  EXPECT_DOUBLE_EQ(utility_after(g, {{0, 2}, {1, 0}, {1, 0}}), 1.0);
}

TEST(OshiZumo, EqualBidsEndAtCenter) {
  const Game g = make_oshi_zumo(2, 5);
  EXPECT_DOUBLE_EQ(utility_after(g, {{4, 4}}), 0.5);
  EXPECT_DOUBLE_EQ(utility_after(g, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}), 0.5);
}

TEST(OshiZumo, LegalBidsMatchCoins) {
  const Game g = make_oshi_zumo(2, 4);
  std::function<void(int, int, int, int)> check = [&](int id, int pos, int c1, int c2) {
    const GameNode& n = g.node(id);
    if (n.kind == NodeKind::kTerminal) {
      EXPECT_TRUE(pos < 0 || pos > 4 || (c1 == 0 && c2 == 0));
      return;
    }
    EXPECT_EQ(n.rows, std::max(c1, 1));
    EXPECT_EQ(n.cols, std::max(c2, 1));
    for (int i = 0; i < n.rows; ++i) {
      for (int j = 0; j < n.cols; ++j) {
        const int b1 = c1 > 0 ? i + 1 : 0;
        const int b2 = c2 > 0 ? j + 1 : 0;
        check(n.child(i, j), pos + (b1 > b2) - (b1 < b2), c1 - b1, c2 - b2);
      }
    }
  };
  check(g.root(), 2, 4, 4);
}

TEST(RandomGame, InnerCountAndDeterminism) {
  for (int b = 2; b <= 3; ++b) {
    for (int d = 1; d <= 3; ++d) {
      const Game g = make_random_game(b, d, 7);
      int expected = 0;
      int layer = 1;
      for (int k = 0; k < d; ++k, layer *= b * b) expected += layer;
      EXPECT_EQ(g.num_inner(), expected);
      EXPECT_EQ(g.depth(), d);
      const Game h = make_random_game(b, d, 7);
      ASSERT_EQ(g.num_nodes(), h.num_nodes());
      for (int id = 0; id < g.num_nodes(); ++id) EXPECT_EQ(g.node(id).utility, h.node(id).utility);
    }
  }
}

TEST(RandomGame, RejectsDegenerateSizes) {
  EXPECT_THROW(make_random_game(2, 0, 1), std::invalid_argument);
  EXPECT_THROW(make_random_game(1, 2, 1), std::invalid_argument);
}

TEST(LinBound, StopRewards) {
  const auto u = linbound_rewards(4, 0.12, 0.001);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_NEAR(u[0], 0.941, 1e-12);
  EXPECT_NEAR(u[1], 0.90336, 1e-12);
  EXPECT_NEAR(u[2], 0.96 * 0.90336, 1e-12);
}

TEST(LinBound, ValueIsOneEverywhereOnTheChain) {
  const Game g = make_linbound(4, 0.12, 0.001);
  const auto solved = compute_subgame_values(g);
  int id = g.root();
  for (int d = 1; d <= 4; ++d) {
    const GameNode& n = g.node(id);
    ASSERT_EQ(n.kind, NodeKind::kInner);
    EXPECT_EQ(n.cols, 1);
    EXPECT_EQ(n.rows, d < 4 ? 3 : 2);
    EXPECT_NEAR(solved.values[static_cast<std::size_t>(id)], 1.0, 1e-12);
    if (d < 4) {
      // The stop reward of node d is u_{D-d}.
      EXPECT_NEAR(g.node(n.child(0, 0)).utility, linbound_rewards(4, 0.12, 0.001)[static_cast<std::size_t>(3 - d)], 1e-12);
      id = n.child(1, 0);
    }
  }
}

TEST(Anti, ChainPayoffs) {
  const Game g = make_anti(5);
  EXPECT_EQ(g.depth(), 5);
  int id = g.root();
  for (int d = 1; d <= 5; ++d) {
    const GameNode& n = g.node(id);
    EXPECT_NEAR(g.node(n.child(0, 0)).utility, (5.0 - d) / 5.0, 1e-12);
    id = n.child(1, 0);
  }
  EXPECT_DOUBLE_EQ(g.node(id).utility, 1.0);
  EXPECT_NEAR(compute_subgame_values(g).root_value(g), 1.0, 1e-12);
}

TEST(Counterexample, Structure) {
  const Game g = make_counterexample_game();
  EXPECT_DOUBLE_EQ(utility_after(g, {{cex::kX, 0}}), 0.0);
  EXPECT_DOUBLE_EQ(utility_after(g, {{cex::kY, 0}, {cex::kU, cex::kL}}), 1.0);
  EXPECT_DOUBLE_EQ(utility_after(g, {{cex::kY, 0}, {cex::kU, cex::kR}}), 0.0);
  EXPECT_DOUBLE_EQ(utility_after(g, {{cex::kY, 0}, {cex::kD, cex::kR}}), 1.0);
  EXPECT_DOUBLE_EQ(utility_after(g, {{cex::kY, 0}, {cex::kD, cex::kL}}), 0.0);
}

TEST(GameSpec, RoundTrip) {
  for (const char* text : {"goofspiel:d=5,nature=desc", "goofspiel:d=4,nature=asc", "goofspiel:d=4,nature=3/1/0/2",
                           "oshizumo:K=2,N=5", "random:B=3,D=3,seed=7", "anti:D=5",
                           "linbound:D=4,gamma=0.12,eta=0.001", "counterexample"}) {
    EXPECT_EQ(GameSpec::parse(text).to_string(), text);
  }
  EXPECT_EQ(GameSpec::parse("goofspiel:d=3").to_string(), "goofspiel:d=3,nature=desc");
}

TEST(GameSpec, Rejections) {
  for (const char* text : {"chess", "oshizumo:K=0,N=5", "random:B=1,D=2,seed=0", "random:B=2,D=0,seed=0",
                           "linbound:D=4,gamma=1.5,eta=0.001", "linbound:D=4,gamma=0.1,eta=0", "anti:D=x",
                           "oshizumo:K=2,N=5,Z=1", "goofspiel:d=1", "counterexample:x=1", "random:B"}) {
    EXPECT_THROW(GameSpec::parse(text), std::invalid_argument) << text;
  }
}

TEST(GameBuilder, RejectsInvalidGames) {
  GameBuilder b;
  EXPECT_THROW(b.add_terminal(1.2), std::invalid_argument);
  const int z = b.add_terminal(0.5);
  EXPECT_THROW(b.add_chance({z, z}, {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(b.add_inner(2, 1, {z}), std::invalid_argument);
  EXPECT_THROW(b.add_inner(1, 1, {5}), std::invalid_argument);
}
