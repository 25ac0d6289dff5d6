#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ratv/graph.hpp"

namespace ratv {

/// Turn-based max-parity game: player 0 (even) wins a play iff the largest priority seen
/// infinitely often is even. Every node needs at least one successor.
struct ParityGame {
  Adjacency adj;
  std::vector<int> owner;
  std::vector<unsigned> priority;

  std::size_t size() const { return adj.size(); }
};

struct ParitySolution {
  std::vector<int> winner;
  /// Successor chosen at nodes owned by their winner; npos elsewhere.
  std::vector<std::size_t> strategy;
};

namespace detail {

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), pred_(g.size()) {
    for (std::size_t v = 0; v < g.size(); ++v)
      for (std::size_t w : g.adj[v]) pred_[w].push_back(v);
  }

  ParitySolution run() {
    ParitySolution s;
    s.winner.assign(g_.size(), 0);
    s.strategy.assign(g_.size(), npos);
    std::vector<char> all(g_.size(), 1);
    solve(all, s);
    return s;
  }

 private:
  /// Attractor of `target` for player p inside `alive`; records attracting moves in `strategy`.
  std::vector<char> attractor(const std::vector<char>& alive, const std::vector<char>& target, int p,
                              std::vector<std::size_t>& strategy) const {
    std::size_t n = g_.size();
    std::vector<char> attr(n, 0);
    std::vector<std::size_t> remaining(n, 0), work;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      if (target[v]) {
        attr[v] = 1;
        work.push_back(v);
      }
      for (std::size_t w : g_.adj[v]) remaining[v] += alive[w] ? 1 : 0;
    }
    while (!work.empty()) {
      std::size_t w = work.back();
      work.pop_back();
      for (std::size_t v : pred_[w]) {
        if (!alive[v] || attr[v]) continue;
        if (g_.owner[v] == p) {
          attr[v] = 1;
          strategy[v] = w;
          work.push_back(v);
        } else if (--remaining[v] == 0) {
          attr[v] = 1;
          work.push_back(v);
        }
      }
    }
    return attr;
  }

  void solve(const std::vector<char>& alive, ParitySolution& out) {
    std::size_t n = g_.size();
    bool any = false;
    unsigned d = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) {
        any = true;
        d = std::max(d, g_.priority[v]);
      }
    if (!any) return;
    int p = static_cast<int>(d % 2);
    std::vector<char> top(n, 0);
    for (std::size_t v = 0; v < n; ++v) top[v] = alive[v] && g_.priority[v] == d;
    std::vector<std::size_t> attr_strategy(n, npos);
    std::vector<char> a = attractor(alive, top, p, attr_strategy);
    std::vector<char> rest(n, 0);
    for (std::size_t v = 0; v < n; ++v) rest[v] = alive[v] && !a[v];
    solve(rest, out);
    bool opponent_wins_some = false;
    for (std::size_t v = 0; v < n; ++v) opponent_wins_some |= rest[v] && out.winner[v] != p;
    if (!opponent_wins_some) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!a[v]) continue;
        out.winner[v] = p;
        out.strategy[v] = npos;
        if (g_.owner[v] != p) continue;
        if (attr_strategy[v] != npos) {
          out.strategy[v] = attr_strategy[v];
        } else {
          for (std::size_t w : g_.adj[v])
            if (alive[w]) {
              out.strategy[v] = w;
              break;
            }
        }
      }
      return;
    }
    std::vector<char> lost(n, 0);
    for (std::size_t v = 0; v < n; ++v) lost[v] = rest[v] && out.winner[v] != p;
    std::vector<std::size_t> opp_strategy(n, npos);
    std::vector<char> b = attractor(alive, lost, 1 - p, opp_strategy);
    // Opponent keeps its sub-solution strategy on `lost`; attracting moves elsewhere in b.
    for (std::size_t v = 0; v < n; ++v) {
      if (!b[v]) continue;
      if (!lost[v]) out.strategy[v] = g_.owner[v] == 1 - p ? opp_strategy[v] : npos;
      out.winner[v] = 1 - p;
    }
    std::vector<char> rest2(n, 0);
    for (std::size_t v = 0; v < n; ++v) rest2[v] = alive[v] && !b[v];
    solve(rest2, out);
  }

  const ParityGame& g_;
  Adjacency pred_;
};

}  // namespace detail

/// Zielonka's recursive algorithm with memoryless strategies for both players.
inline ParitySolution solve_parity(const ParityGame& g) { return detail::Zielonka(g).run(); }

}  // namespace ratv
