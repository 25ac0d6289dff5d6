#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/graph.hpp"

namespace ratv {

/// Zero-sum mean-payoff game for player i. Nodes [0, S) are states owned by the coalition
/// (minimiser), which commits a_{-i}; node S + s * Q + q is i's response node (maximiser).
/// A response node carries its source state's weight, so each original step counts twice.
struct MpZeroSumGame {
  std::size_t player = 0;
  std::size_t num_states = 0, num_partial = 0;
  Adjacency adj;
  std::vector<int> maximiser;  // 1 on response nodes
  std::vector<std::int64_t> weight;

  std::size_t size() const { return adj.size(); }
  std::size_t response_node(std::size_t s, std::size_t q) const { return num_states + s * num_partial + q; }
};

inline MpZeroSumGame build_mp_punish_game(const Game& game, std::size_t i) {
  const Arena& arena = game.arena;
  MpZeroSumGame g;
  g.player = i;
  g.num_states = arena.num_states();
  g.num_partial = arena.num_partial(i);
  std::size_t S = g.num_states, Q = g.num_partial, N = S + S * Q;
  g.adj.resize(N);
  g.maximiser.assign(N, 0);
  g.weight.resize(N);
  for (std::size_t s = 0; s < S; ++s) {
    g.weight[s] = game.weights()[i][s];
    for (std::size_t q = 0; q < Q; ++q) {
      std::size_t r = g.response_node(s, q);
      g.adj[s].push_back(r);
      g.maximiser[r] = 1;
      g.weight[r] = game.weights()[i][s];
      for (std::size_t a = 0; a < arena.num_actions(i); ++a) {
        std::size_t t = arena.succ(s, arena.complete(i, q, a));
        if (std::find(g.adj[r].begin(), g.adj[r].end(), t) == g.adj[r].end()) g.adj[r].push_back(t);
      }
    }
  }
  return g;
}

struct MpSolution {
  std::vector<Rational> value;          // per node
  std::vector<std::size_t> strategy;    // chosen successor at every node, for its owner
};

namespace detail {

/// The unique p/d with d <= n and |p/d - x| <= 1/(2n^2), for x = num/den.
inline Rational round_to_small_denominator(std::int64_t num, std::int64_t den, std::int64_t n) {
  using I = __int128;
  for (std::int64_t d = 1; d <= n; ++d) {
    I scaled = static_cast<I>(num) * d;
    I p = scaled >= 0 ? (scaled + den / 2) / den : -((-scaled + den / 2) / den);
    I diff = p * den - scaled;
    if (diff < 0) diff = -diff;
    if (diff * 2 * n * n <= static_cast<I>(d) * den) return Rational(static_cast<std::int64_t>(p), d);
  }
  throw std::logic_error("mean-payoff value iteration did not converge to a small-denominator rational");
}

/// Energy progress measure on the subgame `alive`: the least credit the energy player needs
/// at each node to keep the running sum of `w` non-negative forever (npos = unbounded).
/// Returns, for energy-player nodes, the successor realising the measure.
inline std::vector<std::size_t> energy_strategy(const Adjacency& adj, const std::vector<char>& alive,
                                                const std::vector<char>& energy_owner,
                                                const std::vector<std::int64_t>& w) {
  std::size_t n = adj.size();
  std::int64_t bound = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (alive[v] && w[v] < 0) bound -= w[v];
  const std::int64_t top = -1;
  std::vector<std::int64_t> f(n, 0);
  auto best = [&](std::size_t v, std::size_t* arg) {
    bool want_min = energy_owner[v];
    std::int64_t b = want_min ? top : 0;
    bool first = true;
    for (std::size_t u : adj[v]) {
      if (!alive[u]) continue;
      std::int64_t fu = f[u];
      bool better;
      if (first) better = true;
      else if (want_min) better = b == top ? fu != top : (fu != top && fu < b);
      else better = b != top && (fu == top || fu > b);
      if (better) {
        b = fu;
        if (arg) *arg = u;
      }
      first = false;
    }
    return b;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v] || f[v] == top) continue;
      std::int64_t g = best(v, nullptr);
      std::int64_t nv = g == top ? top : std::max<std::int64_t>(0, g - w[v]);
      if (nv != top && nv > bound) nv = top;
      if (nv != f[v] && (nv == top || nv > f[v])) {
        f[v] = nv;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> choice(n, npos);
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v] || !energy_owner[v]) continue;
    if (f[v] == top) throw std::logic_error("energy player loses inside an optimal-value class");
    std::size_t arg = npos;
    best(v, &arg);
    choice[v] = arg;
  }
  return choice;
}

}  // namespace detail

/// Exact values by value iteration over K = 4 N^3 max(W, 1) rounds followed by rounding to the
/// unique nearby rational with denominator <= N; optimal memoryless strategies by solving, inside
/// each class of equal value restricted to value-preserving edges, one energy game per player.
inline MpSolution solve_mp_values(const MpZeroSumGame& g) {
  std::size_t N = g.size();
  std::int64_t W = 1;
  for (auto w : g.weight) W = std::max<std::int64_t>(W, std::llabs(w));
  std::int64_t n = static_cast<std::int64_t>(N);
  long double est = 4.0L * n * n * n * static_cast<long double>(W) * static_cast<long double>(W);
  if (est > 4.0e18L) throw std::length_error("mean-payoff game too large for exact value iteration");
  std::int64_t K = 4 * n * n * n * W;
  std::vector<std::int64_t> v(N, 0), next(N);
  for (std::int64_t k = 0; k < K; ++k) {
    for (std::size_t u = 0; u < N; ++u) {
      std::int64_t b = 0;
      bool first = true;
      for (std::size_t t : g.adj[u]) {
        if (first || (g.maximiser[u] ? v[t] > b : v[t] < b)) b = v[t];
        first = false;
      }
      next[u] = g.weight[u] + b;
    }
    v.swap(next);
  }
  MpSolution sol;
  sol.value.reserve(N);
  for (std::size_t u = 0; u < N; ++u) sol.value.push_back(detail::round_to_small_denominator(v[u], K, n));

  sol.strategy.assign(N, npos);
  std::map<Rational, std::vector<std::size_t>> classes;
  for (std::size_t u = 0; u < N; ++u) classes[sol.value[u]].push_back(u);
  for (const auto& [x, members] : classes) {
    std::vector<char> alive(N, 0);
    for (std::size_t u : members) alive[u] = 1;
    Adjacency adj(N);
    for (std::size_t u : members)
      for (std::size_t t : g.adj[u])
        if (alive[t]) adj[u].push_back(t);
    std::int64_t p = x.num().get_si(), d = x.den().get_si();
    std::vector<std::int64_t> up(N, 0), down(N, 0);
    for (std::size_t u : members) {
      up[u] = g.weight[u] * d - p;
      down[u] = p - g.weight[u] * d;
    }
    std::vector<char> max_owner(N, 0), min_owner(N, 0);
    for (std::size_t u : members) {
      max_owner[u] = g.maximiser[u];
      min_owner[u] = !g.maximiser[u];
    }
    auto smax = detail::energy_strategy(adj, alive, max_owner, up);
    auto smin = detail::energy_strategy(adj, alive, min_owner, down);
    for (std::size_t u : members) sol.strategy[u] = g.maximiser[u] ? smax[u] : smin[u];
  }
  return sol;
}

/// pun_i per state with memoryless optimal strategies of both sides.
struct PunishValues {
  std::size_t player = 0;
  std::vector<Rational> value;         // per state
  std::vector<std::size_t> coalition;  // state -> a_{-i}
  std::vector<std::size_t> response;   // s * Q + q -> a_i
};

inline PunishValues punish_values(const Game& game, std::size_t i) {
  const Arena& arena = game.arena;
  MpZeroSumGame g = build_mp_punish_game(game, i);
  MpSolution sol = solve_mp_values(g);
  PunishValues pv;
  pv.player = i;
  std::size_t S = g.num_states, Q = g.num_partial;
  pv.value.assign(sol.value.begin(), sol.value.begin() + static_cast<std::ptrdiff_t>(S));
  pv.coalition.resize(S);
  pv.response.resize(S * Q);
  for (std::size_t s = 0; s < S; ++s) {
    pv.coalition[s] = sol.strategy[s] - S - s * Q;
    for (std::size_t q = 0; q < Q; ++q) {
      std::size_t t = sol.strategy[g.response_node(s, q)];
      for (std::size_t a = 0; a < arena.num_actions(i); ++a)
        if (arena.succ(s, arena.complete(i, q, a)) == t) {
          pv.response[s * Q + q] = a;
          break;
        }
    }
  }
  return pv;
}

/// Every deviation a'_i from (s, profile) lands where pun_i <= z.
inline bool z_secure(const Arena& arena, std::size_t s, std::size_t profile, std::size_t i, const Rational& z,
                     const std::vector<Rational>& values) {
  for (std::size_t a = 0; a < arena.num_actions(i); ++a)
    if (values[arena.succ(s, arena.with_action(profile, i, a))] > z) return false;
  return true;
}

}  // namespace ratv
