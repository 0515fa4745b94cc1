#include <gtest/gtest.h>

#include "simove/counterexample.hpp"
#include "simove/games.hpp"

using namespace simove;

namespace {

double pennies(int i, int j) { return i == j ? 1.0 : 0.0; }

// One round of J1 against J2 at node J; returns the joint action.
std::pair<int, int> play_j(CooperationPolicyJ& p1, CooperationPolicyJ& p2, Rng& rng) {
  const int i = p1.select(rng);
  const int j = p2.select(rng);
  p1.update(pennies(i, j));
  p2.update(1.0 - pennies(i, j));
  return {i, j};
}

}  // namespace

TEST(CooperationJ, BareCycleWithoutChecks) {
  CooperationParams params;
  params.checks = false;
  CooperationPolicyJ p1(0, params);
  CooperationPolicyJ p2(1, params);
  Rng rng(17);
  for (int t = 0; t < 20000; ++t) {
    play_j(p1, p2, rng);
    ASSERT_EQ(p1.in_buffer(), p2.in_buffer());
    ASSERT_EQ(p1.phase(), p2.phase());
  }
  ASSERT_FALSE(p1.in_buffer());
  // Resynchronize on the pattern start and record one long stretch.
  while (p1.position() != 0) play_j(p1, p2, rng);
  const std::pair<int, int> cycle[4] = {{cex::kU, cex::kL}, {cex::kU, cex::kR}, {cex::kD, cex::kR}, {cex::kD, cex::kL}};
  int count_u = 0;
  int count_l = 0;
  for (int t = 0; t < 4000; ++t) {
    const auto a = play_j(p1, p2, rng);
    EXPECT_EQ(a, cycle[t % 4]);
    count_u += a.first == cex::kU;
    count_l += a.second == cex::kL;
  }
  EXPECT_EQ(count_u, 2000);
  EXPECT_EQ(count_l, 2000);
  EXPECT_FALSE(p1.in_buffer());
}

TEST(CooperationJ, SelfPlaySettlesWithChecks) {
  CooperationPolicyJ p1(0, {});
  CooperationPolicyJ p2(1, {});
  Rng rng(5);
  for (int t = 0; t < 300000; ++t) play_j(p1, p2, rng);
  EXPECT_EQ(p1.phase(), p2.phase());
  EXPECT_FALSE(p1.in_buffer());
  EXPECT_LT(p1.cheat_estimate(), 0.1);
}

TEST(CooperationJ, ConstantOpponentEndsCooperation) {
  CooperationPolicyJ p1(0, {});
  Rng rng(3);
  // Honest partner until cooperation starts, then the adversary always plays L.
  CooperationPolicyJ honest(1, {});
  while (p1.in_buffer()) play_j(p1, honest, rng);
  const int phase = p1.phase();
  const int ends = p1.cooperation_ends();
  for (int t = 0; t < 20000 && p1.cooperation_ends() == ends; ++t) {
    const int i = p1.select(rng);
    p1.update(pennies(i, cex::kL));
  }
  EXPECT_EQ(p1.cooperation_ends(), ends + 1);
  EXPECT_EQ(p1.phase(), phase + 1);
  EXPECT_TRUE(p1.in_buffer());
}

TEST(CooperationJ, FractionalPayoffIsAProtocolError) {
  CooperationParams params;
  params.b0 = 1;
  CooperationPolicyJ p1(0, params);
  Rng rng(1);
  p1.select(rng);
  p1.update(0.5);  // buffer phase accepts any reward
  ASSERT_FALSE(p1.in_buffer());
  p1.select(rng);
  EXPECT_THROW(p1.update(0.5), ProtocolError);
}

TEST(CooperationI, UndisturbedPatternFraction) {
  CooperationPolicyI p(CooperationParams{});
  Rng rng(21);
  double next_y = 1.0;
  long long coop_steps = 0;
  long long pattern_steps = 0;
  int ends_at_start = -1;
  for (int t = 0; t < 400000; ++t) {
    const bool coop = !p.in_buffer();
    const int pos = p.position();
    std::vector<double> s;
    p.current_strategy(s);
    const int a = p.select(rng);
    if (coop && t > 100000) {
      if (ends_at_start < 0) ends_at_start = p.cooperation_ends();
      ++coop_steps;
      // A pattern step is one where the policy was not forced into a check.
      const int expected = (pos == 0 || pos == 3) ? cex::kY : cex::kX;
      if (s[static_cast<std::size_t>(expected)] < 1.0 && s[static_cast<std::size_t>(expected)] > 0.5 && a == expected) {
        ++pattern_steps;
      }
    }
    double r = 0.0;
    if (a == cex::kY) {
      r = next_y;
      next_y = 1.0 - next_y;
    }
    p.update(r);
  }
  ASSERT_GT(coop_steps, 0);
  EXPECT_EQ(p.cooperation_ends(), ends_at_start);
  const double frac = static_cast<double>(pattern_steps) / static_cast<double>(coop_steps);
  EXPECT_NEAR(frac, 1.0 - 4 * 0.05, 0.04);
}

TEST(CooperationI, NonzeroPayoffAfterXIsAProtocolError) {
  CooperationParams params;
  params.checks = false;
  CooperationPolicyI p(params);
  Rng rng(1);
  while (p.in_buffer()) {
    p.select(rng);
    p.update(0.0);
  }
  // Last Y payoff defaults to 0, so the pattern starts at Y expecting 1.
  EXPECT_EQ(p.select(rng), cex::kY);
  p.update(1.0);
  EXPECT_EQ(p.select(rng), cex::kX);
  EXPECT_THROW(p.update(0.3), ProtocolError);
}

TEST(CounterexampleFactory, RoleAssignment) {
  const Game g = make_counterexample_game();
  const auto f = make_counterexample_factory({});
  const int j = g.node(g.root()).child(cex::kY, 0);
  EXPECT_NE(dynamic_cast<CooperationPolicyI*>(f(g, g.root(), 0, 2).get()), nullptr);
  EXPECT_NE(dynamic_cast<SingleAction*>(f(g, g.root(), 1, 1).get()), nullptr);
  EXPECT_NE(dynamic_cast<CooperationPolicyJ*>(f(g, j, 0, 2).get()), nullptr);
  EXPECT_NE(dynamic_cast<CooperationPolicyJ*>(f(g, j, 1, 2).get()), nullptr);
  const Game other = make_random_game(2, 1, 0);
  EXPECT_THROW(f(other, other.root(), 0, 2), std::invalid_argument);
}

TEST(CounterexampleFactory, RejectsBadParameters) {
  CooperationParams p;
  p.epsilon = 0.3;
  EXPECT_THROW(make_counterexample_factory(p), std::invalid_argument);
  p.epsilon = 0.05;
  p.b0 = 0;
  EXPECT_THROW(make_counterexample_factory(p), std::invalid_argument);
}
