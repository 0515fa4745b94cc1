#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "simove/csv.hpp"
#include "simove/harness.hpp"

using namespace simove;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.exp_id = "unit";
  cfg.game = GameSpec::parse("random:B=2,D=1,seed=3");
  cfg.policy = PolicyKind::kRegretMatching;
  cfg.gamma = 0.1;
  cfg.iterations = 1000;
  cfg.checkpoints = log_checkpoints(1000, 10);
  cfg.seeds = {0, 1};
  return cfg;
}

void expect_same_rows(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].seed, b[k].seed);
    EXPECT_EQ(a[k].iteration, b[k].iteration);
    EXPECT_EQ(a[k].g_root, b[k].g_root);
    EXPECT_EQ(a[k].upo_max, b[k].upo_max);
    ASSERT_EQ(a[k].expl.size(), b[k].expl.size());
    for (std::size_t f = 0; f < a[k].expl.size(); ++f) {
      EXPECT_EQ(a[k].expl[f].player1, b[k].expl[f].player1);
      EXPECT_EQ(a[k].expl[f].player2, b[k].expl[f].player2);
    }
  }
}

}  // namespace

TEST(Checkpoints, DefaultGrid) {
  const auto c = default_checkpoints(1000000);
  EXPECT_EQ(c.size(), 101u);
  EXPECT_EQ(c.front(), 10);
  EXPECT_EQ(c.back(), 1000000);
  for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LT(c[k - 1], c[k]);
  EXPECT_EQ(default_checkpoints(5), std::vector<long long>{5});
}

TEST(Checkpoints, LogGrid) {
  for (long long n : {1LL, 7LL, 100LL, 12345LL}) {
    for (int count : {1, 3, 10, 50}) {
      const auto c = log_checkpoints(n, count);
      EXPECT_EQ(static_cast<long long>(c.size()), std::min<long long>(count, n));
      EXPECT_EQ(c.back(), n);
      EXPECT_GE(c.front(), 1);
      for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LT(c[k - 1], c[k]);
    }
  }
  EXPECT_THROW(log_checkpoints(10, 0), std::invalid_argument);
}

TEST(Harness, RowsPerSeedAndCheckpoint) {
  const auto cfg = small_config();
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 20u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].seed, k < 10 ? 0u : 1u);
    EXPECT_EQ(rows[k].iteration, cfg.checkpoints[k % 10]);
    EXPECT_EQ(rows[k].expl.size(), 4u);
    for (const auto& e : rows[k].expl) {
      EXPECT_GE(e.player1, -1e-12);
      EXPECT_GE(e.player2, -1e-12);
    }
    EXPECT_EQ(rows[k].game, "random:B=2,D=1,seed=3");
    EXPECT_EQ(rows[k].policy, "rm");
    EXPECT_EQ(rows[k].variant, "smmcts");
  }
}

TEST(Harness, DeterministicApartFromTiming) {
  const auto cfg = small_config();
  expect_same_rows(run_experiment(cfg), run_experiment(cfg));
}

TEST(Harness, ParallelMatchesSerial) {
  auto cfg = small_config();
  cfg.game = GameSpec::parse("goofspiel:d=3");
  cfg.variant = Variant::kAveraged;
  cfg.policy = PolicyKind::kExp3Explore;
  cfg.seeds = {4, 5, 6};
  expect_same_rows(run_experiment(cfg), run_experiment_serial(cfg));
}

TEST(Harness, NoExploreWithinGammaBound) {
  auto cfg = small_config();
  cfg.game = GameSpec::parse("goofspiel:d=3");
  cfg.iterations = 5000;
  cfg.checkpoints = log_checkpoints(5000, 12);
  const double slack = cfg.gamma / (1.0 - cfg.gamma) + 1e-9;
  for (const auto& r : run_experiment(cfg)) {
    EXPECT_LE(r.expl[2].sum(), r.expl[0].sum() + 2 * slack);
    EXPECT_LE(r.expl[3].sum(), r.expl[1].sum() + 2 * slack);
  }
}

TEST(Harness, HookSeesEveryCheckpoint) {
  const auto cfg = small_config();
  int calls = 0;
  run_experiment(cfg, [&](const SearchTree& tree, const TraceRow& row) {
    ++calls;
    EXPECT_EQ(tree.iterations(), row.iteration);
  });
  EXPECT_EQ(calls, 20);
}

TEST(Harness, RejectsBadConfig) {
  auto cfg = small_config();
  cfg.seeds.clear();
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.checkpoints = {5, 5};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.game = GameSpec::parse("counterexample");
  EXPECT_NO_THROW(make_factory(cfg));
}

TEST(GroundTruth, CachedAndLimited) {
  const auto spec = GameSpec::parse("goofspiel:d=3");
  EXPECT_EQ(ground_truth(spec).get(), ground_truth(spec).get());
  EXPECT_NEAR(ground_truth(spec)->value, 0.5, 1e-9);
  EXPECT_THROW(ground_truth(GameSpec::parse("goofspiel:d=12")), GroundTruthUnavailable);
  EXPECT_THROW(ground_truth(GameSpec::parse("random:B=5,D=6,seed=1")), GroundTruthUnavailable);
}

TEST(Csv, RoundTrip) {
  auto cfg = small_config();
  cfg.game = GameSpec::parse("goofspiel:d=2,nature=1/0");
  cfg.exp_id = "id with \"quotes\"";
  cfg.seeds = {3};
  const auto rows = run_experiment(cfg);
  std::stringstream ss;
  write_trace_csv(ss, cfg.flavors, rows);
  const Trace t = read_trace_csv(ss);
  ASSERT_EQ(t.flavors, cfg.flavors);
  ASSERT_EQ(t.rows.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(t.rows[k].exp_id, rows[k].exp_id);
    EXPECT_EQ(t.rows[k].game, rows[k].game);
    EXPECT_EQ(t.rows[k].wall_ms, rows[k].wall_ms);
    EXPECT_EQ(t.rows[k].gamma, rows[k].gamma);
  }
  expect_same_rows(t.rows, rows);
}

TEST(Csv, HeaderAndQuoting) {
  const auto h = trace_header({ExtractFlavor::kEmpirical});
  const std::vector<std::string> expected = {"exp_id", "game", "variant", "policy", "gamma", "seed", "iteration",
                                             "expl1_empirical", "expl2_empirical", "g_root", "upo_max", "wall_ms"};
  EXPECT_EQ(h, expected);
  const auto f = split_csv_record("a,\"b,c\",\"d\"\"e\",");
  const std::vector<std::string> fields = {"a", "b,c", "d\"e", ""};
  EXPECT_EQ(f, fields);
}

TEST(Csv, RejectsMalformedInput) {
  std::stringstream bad_header("exp_id,game\n");
  EXPECT_THROW(read_trace_csv(bad_header), std::invalid_argument);
  std::stringstream ss;
  write_trace_csv(ss, {ExtractFlavor::kAverage}, {});
  std::string text = ss.str() + "x,y,z\n";
  std::stringstream short_row(text);
  EXPECT_THROW(read_trace_csv(short_row), std::invalid_argument);
}
