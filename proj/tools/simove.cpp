#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "simove/bound.hpp"
#include "simove/csv.hpp"
#include "simove/harness.hpp"

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash != std::string::npos && dash > 0) {
      const auto lo = std::stoull(item.substr(0, dash));
      const auto hi = std::stoull(item.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("bad seed range " + item);
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(std::stoull(item));
    }
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  return seeds;
}

void print_strategy(const char* label, const simove::MixedStrategy& s) {
  std::printf("%s", label);
  for (std::size_t k = 0; k < s.size(); ++k) std::printf("%s%.12g", k ? " " : " (", s[k]);
  std::printf(")\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simultaneous-move Monte Carlo tree search experiments"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run SM-MCTS and record exploitability traces");
  std::string game_text;
  std::string variant = "smmcts";
  std::string policy = "exp3";
  double gamma = 0.1;
  long long iters = 1000;
  std::string seeds = "0";
  std::string out;
  int checkpoints = 0;
  long long b0 = 1000;
  std::string exp_id = "exp";
  std::vector<std::string> flavors;
  bool serial = false;
  run->add_option("--game", game_text, "game spec, e.g. goofspiel:d=4,nature=desc")->required();
  run->add_option("--variant", variant, "smmcts or smmcts-a")->capture_default_str();
  run->add_option("--policy", policy, "exp3, rm, exp3*, rm* or cex")->capture_default_str();
  run->add_option("--gamma", gamma, "exploration rate (epsilon for cex)")->capture_default_str();
  run->add_option("--iters", iters, "iterations per seed")->capture_default_str();
  run->add_option("--seeds", seeds, "comma-separated seeds or ranges like 0-9")->capture_default_str();
  run->add_option("--out", out, "CSV output path (stdout when omitted)");
  run->add_option("--checkpoints", checkpoints, "number of log-spaced checkpoints (default: 20 per decade)");
  run->add_option("--cex-b0", b0, "first buffer length of the cex policy")->capture_default_str();
  run->add_option("--exp-id", exp_id, "experiment id column")->capture_default_str();
  run->add_option("--flavors", flavors, "strategy flavors to evaluate")->delimiter(',');
  run->add_flag("--serial", serial, "run seeds one after another");

  // solve
  auto* solve = app.add_subcommand("solve", "print the game value and the root equilibrium");
  std::string solve_game;
  solve->add_option("--game", solve_game, "game spec")->required();

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the finite-time bound T0");
  simove::BoundInputs bi;
  bound->add_option("--b", bi.b, "max actions per node")->required();
  bound->add_option("--D", bi.D, "depth")->required();
  bound->add_option("--gamma", bi.gamma, "exploration")->required();
  bound->add_option("--eps", bi.eps, "Hannan-consistency level")->required();
  bound->add_option("--H", bi.H, "number of inner states")->required();
  bound->add_option("--Ta", bi.T_A, "bandit convergence time")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      simove::ExperimentConfig cfg;
      cfg.exp_id = exp_id;
      cfg.game = simove::GameSpec::parse(game_text);
      cfg.variant = simove::parse_variant(variant);
      cfg.policy = simove::parse_policy_kind(policy);
      cfg.gamma = gamma;
      cfg.iterations = iters;
      cfg.seeds = parse_seeds(seeds);
      cfg.cex_b0 = b0;
      cfg.output_path = out;
      if (checkpoints > 0) cfg.checkpoints = simove::log_checkpoints(iters, checkpoints);
      if (!flavors.empty()) {
        cfg.flavors.clear();
        for (const auto& f : flavors) cfg.flavors.push_back(simove::parse_flavor(f));
      }
      const auto rows = serial ? simove::run_experiment_serial(cfg) : simove::run_experiment(cfg);
      if (out.empty()) simove::write_trace_csv(std::cout, cfg.flavors, rows);
    } else if (*solve) {
      const auto spec = simove::GameSpec::parse(solve_game);
      const auto truth = simove::ground_truth(spec);
      const auto& g = truth->game;
      std::printf("game %s\n", spec.to_string().c_str());
      std::printf("nodes %d inner %d depth %d\n", g.num_nodes(), g.num_inner(), g.depth());
      std::printf("value %.12g\n", truth->value);
      if (g.is_inner(g.root())) {
        const auto r = static_cast<std::size_t>(g.root());
        print_strategy("root player1", truth->solved.row_strategy[r]);
        print_strategy("root player2", truth->solved.col_strategy[r]);
      }
    } else if (*bound) {
      const auto r = simove::finite_time_bound(bi);
      std::printf("T0 %.17g\n", r.T0);
      std::printf("equilibrium_eps %.17g\n", r.equilibrium_eps);
      std::printf("constant_averaged %.17g\n", r.averaged_constant);
      std::printf("constant_upo %.17g\n", r.upo_constant);
      std::printf("constant_lower %.17g\n", r.lower_constant);
      std::printf("%s\n", r.guarantee.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
