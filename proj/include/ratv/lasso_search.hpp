#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/graph.hpp"
#include "ratv/ltl2buchi.hpp"
#include "ratv/punish_gr1.hpp"
#include "ratv/punish_mp.hpp"

namespace ratv {

/// Sub-arena of surviving states and transitions. The start state always survives.
struct RestrictedArena {
  std::size_t start = 0;
  std::vector<char> state_alive;
  std::vector<std::vector<std::size_t>> profiles;  // per state: surviving profiles, ascending

  bool alive(std::size_t s) const { return state_alive[s]; }
  bool has_moves(std::size_t s) const { return !profiles[s].empty(); }
};

template <typename StateOk, typename MoveOk>
RestrictedArena restrict_arena(const Arena& arena, std::size_t start, StateOk&& state_ok, MoveOk&& move_ok) {
  RestrictedArena ra;
  ra.start = start;
  ra.state_alive.resize(arena.num_states());
  ra.profiles.assign(arena.num_states(), {});
  for (std::size_t s = 0; s < arena.num_states(); ++s) ra.state_alive[s] = s == start || state_ok(s);
  for (std::size_t s = 0; s < arena.num_states(); ++s) {
    if (!ra.state_alive[s]) continue;
    for (std::size_t p = 0; p < arena.num_profiles(); ++p)
      if (ra.state_alive[arena.succ(s, p)] && move_ok(s, p)) ra.profiles[s].push_back(p);
  }
  return ra;
}

/// G^{-L}: states in every loser's region, moves punishing-secure for every loser.
/// `regions` is indexed by player; only losers' entries are read.
inline RestrictedArena restrict_gr1(const Game& game, const PlayerSet& losers,
                                    const std::vector<std::vector<char>>& regions) {
  const Arena& arena = game.arena;
  return restrict_arena(
      arena, arena.initial,
      [&](std::size_t s) {
        for (std::size_t j : losers)
          if (!regions[j][s]) return false;
        return true;
      },
      [&](std::size_t s, std::size_t p) {
        for (std::size_t j : losers)
          if (!punishing_secure(arena, s, p, j, regions[j])) return false;
        return true;
      });
}

/// G[z]: states with pun_i <= z_i for all i, moves z_i-secure for all i.
inline RestrictedArena restrict_mp(const Game& game, const std::vector<Rational>& z,
                                   const std::vector<std::vector<Rational>>& values) {
  const Arena& arena = game.arena;
  return restrict_arena(
      arena, arena.initial,
      [&](std::size_t s) {
        for (std::size_t i = 0; i < z.size(); ++i)
          if (values[i][s] > z[i]) return false;
        return true;
      },
      [&](std::size_t s, std::size_t p) {
        for (std::size_t i = 0; i < z.size(); ++i)
          if (!z_secure(arena, s, p, i, z[i], values[i])) return false;
        return true;
      });
}

struct StreettPair {
  std::vector<char> E, C;  // finitely often E, or infinitely often C
};

/// Restricted arena x one counter pair per GR(1) objective x optional Buchi automaton.
/// Node 0 is the start node. Counters and automaton state hold values before the node's state is read.
struct StreettProduct {
  std::vector<std::size_t> state;                      // arena state per node
  Adjacency adj;
  std::vector<std::vector<std::size_t>> edge_profile;  // parallel to adj
  std::vector<StreettPair> pairs;

  std::size_t size() const { return adj.size(); }
};

inline StreettProduct build_streett_product(const Arena& arena, const RestrictedArena& ra,
                                            const std::vector<Gr1Formula>& objectives,
                                            const std::optional<BuchiAutomaton>& buchi) {
  std::vector<CounterArena> ctr;
  for (const auto& g : objectives) ctr.push_back(build_counter_arena(arena, g));
  std::size_t K = ctr.size();
  if (buchi && buchi->initial.size() != 1) throw std::logic_error("automaton must have one initial state");
  StreettProduct p;
  // key: state, K configurations (relative counters), automaton state
  std::map<std::vector<std::size_t>, std::size_t> id;
  std::vector<std::vector<std::size_t>> keys;
  auto get = [&](std::vector<std::size_t> key) {
    auto [it, fresh] = id.emplace(key, keys.size());
    if (fresh) keys.push_back(std::move(key));
    return it->second;
  };
  {
    std::vector<std::size_t> k0(K + 2, 0);
    k0[0] = ra.start;
    for (std::size_t k = 0; k < K; ++k) k0[k + 1] = ctr[k].config(ra.start, 0, 0);
    k0[K + 1] = buchi ? buchi->initial[0] : 0;
    get(std::move(k0));
  }
  for (std::size_t v = 0; v < keys.size(); ++v) {
    std::vector<std::size_t> key = keys[v];
    std::size_t s = key[0];
    std::vector<std::size_t> out, prof;
    std::vector<std::size_t> qs;
    if (buchi) {
      for (const auto& e : buchi->edges[key[K + 1]])
        if (e.guard.holds(arena.labels[s])) qs.push_back(e.target);
    } else {
      qs.push_back(0);
    }
    for (std::size_t pr : ra.profiles[s]) {
      std::size_t t = arena.succ(s, pr);
      std::vector<std::size_t> nk(K + 2);
      nk[0] = t;
      for (std::size_t k = 0; k < K; ++k) nk[k + 1] = ctr[k].step(key[k + 1], t);
      for (std::size_t q : qs) {
        nk[K + 1] = q;
        std::size_t w = get(nk);
        bool dup = false;
        for (std::size_t x = 0; x < out.size(); ++x) dup |= out[x] == w;
        if (dup) continue;
        out.push_back(w);
        prof.push_back(pr);
      }
    }
    p.adj.resize(keys.size());
    p.edge_profile.resize(keys.size());
    p.adj[v] = std::move(out);
    p.edge_profile[v] = std::move(prof);
  }
  std::size_t n = keys.size();
  p.adj.resize(n);
  p.edge_profile.resize(n);
  p.state.resize(n);
  for (std::size_t v = 0; v < n; ++v) p.state[v] = keys[v][0];
  for (std::size_t k = 0; k < K; ++k) {
    StreettPair sp{std::vector<char>(n), std::vector<char>(n)};
    for (std::size_t v = 0; v < n; ++v) {
      sp.E[v] = ctr[k].reset1[keys[v][k + 1]];
      sp.C[v] = ctr[k].reset2[keys[v][k + 1]];
    }
    p.pairs.push_back(std::move(sp));
  }
  if (buchi) {
    // Buchi acceptance as a Streett pair: every node is in E, accepting nodes form C
    StreettPair sp{std::vector<char>(n, 1), std::vector<char>(n)};
    for (std::size_t v = 0; v < n; ++v) sp.C[v] = buchi->accepting[keys[v][K + 1]];
    p.pairs.push_back(std::move(sp));
  }
  return p;
}

/// A reachable strongly connected node set S, cyclic, with S n E_k empty or S n C_k nonempty for
/// every pair; found by recursive SCC refinement.
inline std::optional<std::vector<std::size_t>> streett_good_component(const Adjacency& adj,
                                                                      const std::vector<StreettPair>& pairs,
                                                                      std::size_t start) {
  std::vector<char> reach = reachable(adj, start);
  std::vector<std::vector<std::size_t>> work = sccs(adj, reach);
  std::reverse(work.begin(), work.end());  // topological order: components nearer the start first
  std::size_t n = adj.size();
  while (!work.empty()) {
    std::vector<std::size_t> comp = std::move(work.front());
    work.erase(work.begin());
    if (!is_cyclic(adj, comp)) continue;
    std::vector<char> keep(n, 0);
    for (std::size_t v : comp) keep[v] = 1;
    bool refined = false;
    for (const auto& pr : pairs) {
      bool hits_c = false, hits_e = false;
      for (std::size_t v : comp) {
        hits_c |= pr.C[v] != 0;
        hits_e |= pr.E[v] != 0;
      }
      if (hits_e && !hits_c) {
        for (std::size_t v : comp)
          if (pr.E[v]) keep[v] = 0;
        refined = true;
      }
    }
    if (!refined) return comp;
    auto sub = sccs(adj, keep);
    std::reverse(sub.begin(), sub.end());
    work.insert(work.begin(), sub.begin(), sub.end());
  }
  return std::nullopt;
}

/// Node lasso inside `comp` from `start`: shortest prefix, then a cycle threading one C_k node
/// for every pair whose E_k meets the component.
inline NodeLasso thread_cycle(const Adjacency& adj, const std::vector<StreettPair>& pairs,
                              const std::vector<std::size_t>& comp, std::size_t start) {
  std::size_t n = adj.size();
  std::vector<char> in(n, 0);
  for (std::size_t v : comp) in[v] = 1;
  auto pre = bfs_path(adj, start, [&](std::size_t v) { return in[v] != 0; });
  std::size_t u = pre->back();
  std::vector<std::size_t> seq{u};
  std::size_t cur = u;
  for (const auto& pr : pairs) {
    bool hits_e = false;
    for (std::size_t v : comp) hits_e |= pr.E[v] != 0;
    if (!hits_e) continue;
    auto leg = bfs_path(adj, cur, [&](std::size_t v) { return pr.C[v] != 0; }, in);
    seq.insert(seq.end(), leg->begin() + 1, leg->end());
    cur = leg->back();
  }
  if (seq.size() > 1 && cur == u) {
    seq.pop_back();
  } else {
    auto back = bfs_path(adj, cur, [&](std::size_t v) { return v == u; }, in, true);
    seq.insert(seq.end(), back->begin() + 1, back->end() - 1);
  }
  NodeLasso l;
  l.prefix.assign(pre->begin(), pre->end() - 1);
  l.cycle = std::move(seq);
  return l;
}

/// Projects a product node lasso to an arena lasso, taking the first edge between consecutive nodes.
inline Lasso project_lasso(const StreettProduct& p, const NodeLasso& nl) {
  auto profile = [&](std::size_t v, std::size_t w) {
    for (std::size_t k = 0; k < p.adj[v].size(); ++k)
      if (p.adj[v][k] == w) return p.edge_profile[v][k];
    throw std::logic_error("lasso uses a missing product edge");
  };
  Lasso l;
  std::vector<std::size_t> all = nl.prefix;
  all.insert(all.end(), nl.cycle.begin(), nl.cycle.end());
  for (std::size_t k = 0; k < all.size(); ++k) {
    std::size_t next = k + 1 < all.size() ? all[k + 1] : nl.cycle.front();
    Step st{p.state[all[k]], profile(all[k], next)};
    (k < nl.prefix.size() ? l.prefix : l.cycle).push_back(st);
  }
  return l;
}

inline std::optional<Lasso> streett_nonempty(const StreettProduct& p) {
  auto comp = streett_good_component(p.adj, p.pairs, 0);
  if (!comp) return std::nullopt;
  return project_lasso(p, thread_cycle(p.adj, p.pairs, *comp, 0));
}

}  // namespace ratv
