#include "simove/games.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "simove/rng.hpp"

namespace simove {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Terminal nodes keyed by utility so outcomes are shared.
class TerminalCache {
 public:
  explicit TerminalCache(GameBuilder& b) : builder_(b) {}
  int get(double u) {
    auto [it, inserted] = ids_.try_emplace(u, -1);
    if (inserted) it->second = builder_.add_terminal(u);
    return it->second;
  }

 private:
  GameBuilder& builder_;
  std::map<double, int> ids_;
};

double outcome(double score_diff) {
  if (score_diff > 0) return 1.0;
  if (score_diff < 0) return 0.0;
  return 0.5;
}

class GoofspielBuilder {
 public:
  GoofspielBuilder(int deck, const std::vector<int>& nature) : deck_(deck), nature_(nature), terminals_(b_) {}

  Game build() {
    const std::uint32_t full = (1u << deck_) - 1u;
    const int root = state(0, full, full, 0);
    return std::move(b_).build(root);
  }

 private:
  // (round, remaining cards of both players, point difference) identifies
  // the subgame; histories reaching the same key share a node.
  int state(int round, std::uint32_t hand1, std::uint32_t hand2, int diff) {
    if (round == deck_) return terminals_.get(outcome(diff));
    const std::uint64_t key = (static_cast<std::uint64_t>(round) << 56) | (static_cast<std::uint64_t>(hand1) << 36) |
                              (static_cast<std::uint64_t>(hand2) << 16) |
                              static_cast<std::uint64_t>(diff + 32768);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<int> cards1;
    std::vector<int> cards2;
    for (int c = 0; c < deck_; ++c) {
      if (hand1 & (1u << c)) cards1.push_back(c);
      if (hand2 & (1u << c)) cards2.push_back(c);
    }
    const int prize = nature_[static_cast<std::size_t>(round)];
    std::vector<int> kids;
    kids.reserve(cards1.size() * cards2.size());
    for (int c1 : cards1) {
      for (int c2 : cards2) {
        const int gain = c1 > c2 ? prize : (c1 < c2 ? -prize : 0);
        kids.push_back(state(round + 1, hand1 & ~(1u << c1), hand2 & ~(1u << c2), diff + gain));
      }
    }
    const int id = b_.add_inner(static_cast<int>(cards1.size()), static_cast<int>(cards2.size()), std::move(kids));
    memo_.emplace(key, id);
    return id;
  }

  int deck_;
  const std::vector<int>& nature_;
  GameBuilder b_;
  TerminalCache terminals_;
  std::unordered_map<std::uint64_t, int> memo_;
};

class OshiZumoBuilder {
 public:
  OshiZumoBuilder(int half_width, int coins) : k_(half_width), n_(coins), terminals_(b_) {}

  Game build() {
    const int root = state(k_, n_, n_);
    return std::move(b_).build(root);
  }

 private:
  // Position runs over -1 (out on player 1's side) .. 2K+1 (out on player
  // 2's side). Player 1 pushes toward 2K. The player closer to the final
  // position loses; the center is a draw.
  double final_utility(int pos) const {
    if (pos == k_) return 0.5;
    return pos > k_ ? 1.0 : 0.0;
  }

  int state(int pos, int coins1, int coins2) {
    if (pos < 0 || pos > 2 * k_ || (coins1 == 0 && coins2 == 0)) return terminals_.get(final_utility(pos));
    const int key = (pos * (n_ + 1) + coins1) * (n_ + 1) + coins2;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Bids are 1..coins while coins remain, otherwise a forced 0.
    const int rows = std::max(coins1, 1);
    const int cols = std::max(coins2, 1);
    std::vector<int> kids;
    kids.reserve(static_cast<std::size_t>(rows * cols));
    for (int i = 0; i < rows; ++i) {
      const int bid1 = coins1 > 0 ? i + 1 : 0;
      for (int j = 0; j < cols; ++j) {
        const int bid2 = coins2 > 0 ? j + 1 : 0;
        const int step = bid1 > bid2 ? 1 : (bid1 < bid2 ? -1 : 0);
        kids.push_back(state(pos + step, coins1 - bid1, coins2 - bid2));
      }
    }
    const int id = b_.add_inner(rows, cols, std::move(kids));
    memo_.emplace(key, id);
    return id;
  }

  int k_;
  int n_;
  GameBuilder b_;
  TerminalCache terminals_;
  std::unordered_map<int, int> memo_;
};

int random_subtree(GameBuilder& b, int branching, int depth, Rng& rng) {
  if (depth == 0) return b.add_terminal(unit_double(rng));
  std::vector<int> kids;
  kids.reserve(static_cast<std::size_t>(branching * branching));
  for (int k = 0; k < branching * branching; ++k) kids.push_back(random_subtree(b, branching, depth - 1, rng));
  return b.add_inner(branching, branching, std::move(kids));
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("game spec: bad integer for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("game spec: bad integer for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("game spec: bad number for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> split_params(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("game spec: expected key=value, got " + std::string(item));
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<int> parse_nature(std::string_view v, int deck) {
  std::vector<int> order(static_cast<std::size_t>(deck));
  if (v == "desc") {
    for (int r = 0; r < deck; ++r) order[static_cast<std::size_t>(r)] = deck - 1 - r;
    return order;
  }
  if (v == "asc") {
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  order.clear();
  while (!v.empty()) {
    const auto slash = v.find('/');
    order.push_back(parse_int("nature", v.substr(0, slash)));
    if (slash == std::string_view::npos) break;
    v.remove_prefix(slash + 1);
  }
  return order;
}

void validate_permutation(const std::vector<int>& nature, int deck) {
  if (static_cast<int>(nature.size()) != deck) throw std::invalid_argument("goofspiel: nature sequence must list every card");
  std::vector<char> seen(static_cast<std::size_t>(deck), 0);
  for (int c : nature) {
    if (c < 0 || c >= deck || seen[static_cast<std::size_t>(c)]) {
      throw std::invalid_argument("goofspiel: nature sequence must be a permutation of 0..d-1");
    }
    seen[static_cast<std::size_t>(c)] = 1;
  }
}

}  // namespace

Game make_goofspiel(int deck, const std::vector<int>& nature) {
  if (deck < 2 || deck > 12) throw std::invalid_argument("goofspiel: deck size must be in [2,12]");
  validate_permutation(nature, deck);
  return GoofspielBuilder(deck, nature).build();
}

Game make_oshi_zumo(int half_width, int coins) {
  if (half_width < 1 || coins < 1) throw std::invalid_argument("oshi-zumo: K and N must be >= 1");
  return OshiZumoBuilder(half_width, coins).build();
}

Game make_random_game(int branching, int depth, std::uint64_t seed) {
  if (branching < 2) throw std::invalid_argument("random game: B must be >= 2");
  if (depth < 1) throw std::invalid_argument("random game: D must be >= 1");
  Rng rng(seed);
  GameBuilder b;
  const int root = random_subtree(b, branching, depth, rng);
  return std::move(b).build(root);
}

Game make_anti(int depth) {
  if (depth < 1) throw std::invalid_argument("anti: D must be >= 1");
  GameBuilder b;
  TerminalCache terminals(b);
  // Node d (1-based from the root) offers stop -> (D-d)/D or continue.
  int next = terminals.get(1.0);
  for (int d = depth; d >= 1; --d) {
    const int stop = terminals.get(static_cast<double>(depth - d) / depth);
    next = b.add_inner(2, 1, {stop, next});
  }
  return std::move(b).build(next);
}

std::vector<double> linbound_rewards(int depth, double gamma, double eta) {
  std::vector<double> u;
  if (depth < 2) return u;
  u.push_back(1.0 - gamma / 2.0 + eta);
  for (int k = 1; k < depth - 1; ++k) u.push_back((1.0 - gamma / 3.0) * u.back());
  return u;
}

Game make_linbound(int depth, double gamma, double eta) {
  if (depth < 1) throw std::invalid_argument("linbound: D must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("linbound: gamma must lie in (0,1)");
  if (!(eta > 0.0) || eta > gamma / 2.0) throw std::invalid_argument("linbound: eta must lie in (0, gamma/2]");
  const std::vector<double> u = linbound_rewards(depth, gamma, eta);
  GameBuilder b;
  TerminalCache terminals(b);
  const int zero = terminals.get(0.0);
  // Final node: right -> 1, down -> 0.
  int next = b.add_inner(2, 1, {terminals.get(1.0), zero});
  // Remaining nodes, built upward: up -> u[k], right -> next, down -> 0.
  for (std::size_t k = 0; k < u.size(); ++k) {
    next = b.add_inner(3, 1, {terminals.get(u[k]), next, zero});
  }
  return std::move(b).build(next);
}

Game make_counterexample_game() {
  GameBuilder b;
  const int one = b.add_terminal(1.0);
  const int zero = b.add_terminal(0.0);
  // J: matching pennies, (U,L)=1, (U,R)=0, (D,L)=0, (D,R)=1.
  const int j = b.add_inner(2, 2, {one, zero, zero, one});
  // I: player 1 picks X (payoff 0) or Y (go to J); player 2 has a no-op.
  const int i = b.add_inner(2, 1, {zero, j});
  return std::move(b).build(i);
}

Game make_game(const GameSpec& spec) {
  return std::visit(
      [](const auto& s) -> Game {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GoofspielSpec>) return make_goofspiel(s.deck, s.nature);
        if constexpr (std::is_same_v<T, OshiZumoSpec>) return make_oshi_zumo(s.half_width, s.coins);
        if constexpr (std::is_same_v<T, RandomGameSpec>) return make_random_game(s.branching, s.depth, s.seed);
        if constexpr (std::is_same_v<T, AntiSpec>) return make_anti(s.depth);
        if constexpr (std::is_same_v<T, LinBoundSpec>) return make_linbound(s.depth, s.gamma, s.eta);
        if constexpr (std::is_same_v<T, CounterexampleSpec>) return make_counterexample_game();
      },
      spec.variant);
}

GameSpec GameSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const auto params = colon == std::string_view::npos ? decltype(split_params({})){} : split_params(text.substr(colon + 1));

  auto unknown = [&](const std::string& key) {
    return std::invalid_argument("game spec: unknown parameter '" + key + "' for " + std::string(name));
  };

  GameSpec spec;
  if (name == "goofspiel") {
    GoofspielSpec g;
    std::string nature = "desc";
    for (const auto& [k, v] : params) {
      if (k == "d") g.deck = parse_int(k, v);
      else if (k == "nature") nature = v;
      else throw unknown(k);
    }
    if (g.deck < 2) throw std::invalid_argument("goofspiel: d must be >= 2");
    g.nature = parse_nature(nature, g.deck);
    validate_permutation(g.nature, g.deck);
    spec.variant = g;
  } else if (name == "oshizumo") {
    OshiZumoSpec o;
    for (const auto& [k, v] : params) {
      if (k == "K") o.half_width = parse_int(k, v);
      else if (k == "N") o.coins = parse_int(k, v);
      else throw unknown(k);
    }
    if (o.half_width < 1 || o.coins < 1) throw std::invalid_argument("oshizumo: K and N must be >= 1");
    spec.variant = o;
  } else if (name == "random") {
    RandomGameSpec r;
    for (const auto& [k, v] : params) {
      if (k == "B") r.branching = parse_int(k, v);
      else if (k == "D") r.depth = parse_int(k, v);
      else if (k == "seed") r.seed = parse_u64(k, v);
      else throw unknown(k);
    }
    if (r.branching < 2 || r.depth < 1) throw std::invalid_argument("random: need B >= 2 and D >= 1");
    spec.variant = r;
  } else if (name == "anti") {
    AntiSpec a;
    for (const auto& [k, v] : params) {
      if (k == "D") a.depth = parse_int(k, v);
      else throw unknown(k);
    }
    if (a.depth < 1) throw std::invalid_argument("anti: D must be >= 1");
    spec.variant = a;
  } else if (name == "linbound") {
    LinBoundSpec l;
    for (const auto& [k, v] : params) {
      if (k == "D") l.depth = parse_int(k, v);
      else if (k == "gamma") l.gamma = parse_double(k, v);
      else if (k == "eta") l.eta = parse_double(k, v);
      else throw unknown(k);
    }
    if (l.depth < 1 || !(l.gamma > 0.0 && l.gamma < 1.0) || !(l.eta > 0.0)) {
      throw std::invalid_argument("linbound: need D >= 1, gamma in (0,1), eta > 0");
    }
    spec.variant = l;
  } else if (name == "counterexample") {
    if (!params.empty()) throw unknown(params.front().first);
    spec.variant = CounterexampleSpec{};
  } else {
    throw std::invalid_argument("game spec: unknown game '" + std::string(name) + "'");
  }
  return spec;
}

std::string GameSpec::to_string() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GoofspielSpec>) {
          std::string nature;
          std::vector<int> desc(s.nature.size());
          for (std::size_t r = 0; r < desc.size(); ++r) desc[r] = s.deck - 1 - static_cast<int>(r);
          std::vector<int> asc(s.nature.size());
          std::iota(asc.begin(), asc.end(), 0);
          if (s.nature == desc) {
            nature = "desc";
          } else if (s.nature == asc) {
            nature = "asc";
          } else {
            for (std::size_t r = 0; r < s.nature.size(); ++r) {
              if (r) nature += '/';
              nature += std::to_string(s.nature[r]);
            }
          }
          return "goofspiel:d=" + std::to_string(s.deck) + ",nature=" + nature;
        }
        if constexpr (std::is_same_v<T, OshiZumoSpec>) {
          return "oshizumo:K=" + std::to_string(s.half_width) + ",N=" + std::to_string(s.coins);
        }
        if constexpr (std::is_same_v<T, RandomGameSpec>) {
          return "random:B=" + std::to_string(s.branching) + ",D=" + std::to_string(s.depth) +
                 ",seed=" + std::to_string(s.seed);
        }
        if constexpr (std::is_same_v<T, AntiSpec>) return "anti:D=" + std::to_string(s.depth);
        if constexpr (std::is_same_v<T, LinBoundSpec>) {
          return "linbound:D=" + std::to_string(s.depth) + ",gamma=" + format_double(s.gamma) +
                 ",eta=" + format_double(s.eta);
        }
        if constexpr (std::is_same_v<T, CounterexampleSpec>) return "counterexample";
      },
      variant);
}

}  // namespace simove
