#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/parity.hpp"

namespace ratv {

/// Arena x (i1 in 0..m) x (i2 in 0..n) for one GR(1) goal. Counters hold the value before the
/// configuration's state is read; i1 advances when it is 0 or the state meets psi_{i1}, same for i2/theta.
/// The goal holds iff the i1-reset set is visited finitely often or the i2-reset set infinitely
/// often, so the i1-reset set plays E and the i2-reset set plays C. The usual statement of this
/// construction names them the other way round (C for i1 resets, E for i2 resets), which does
/// not fit its own "finitely often E or infinitely often C" acceptance.
struct CounterArena {
  std::size_t base_states = 0, m = 0, n = 0;
  std::vector<std::size_t> counter_next;  // config -> config with the same state and advanced counters
  std::vector<char> reset1, reset2;       // i1 = 0, i2 = 0

  std::size_t num_configs() const { return base_states * (m + 1) * (n + 1); }
  std::size_t config(std::size_t s, std::size_t i1, std::size_t i2) const { return (s * (m + 1) + i1) * (n + 1) + i2; }
  std::size_t state_of(std::size_t c) const { return c / ((m + 1) * (n + 1)); }
  std::size_t i1_of(std::size_t c) const { return c / (n + 1) % (m + 1); }
  std::size_t i2_of(std::size_t c) const { return c % (n + 1); }

  /// Configuration reached after `c` when the arena moves to `next_state`.
  std::size_t step(std::size_t c, std::size_t next_state) const {
    std::size_t adv = counter_next[c];
    return config(next_state, i1_of(adv), i2_of(adv));
  }
};

inline CounterArena build_counter_arena(const Arena& arena, const Gr1Formula& goal) {
  CounterArena ca;
  ca.base_states = arena.num_states();
  ca.m = goal.antecedents.size();
  ca.n = goal.consequents.size();
  std::size_t C = ca.num_configs();
  ca.counter_next.resize(C);
  ca.reset1.resize(C);
  ca.reset2.resize(C);
  for (std::size_t c = 0; c < C; ++c) {
    std::size_t s = ca.state_of(c), i1 = ca.i1_of(c), i2 = ca.i2_of(c);
    const auto& lab = arena.labels[s];
    std::size_t j1 = i1 == 0 || eval_bool(goal.antecedents[i1 - 1], lab) ? (i1 + 1) % (ca.m + 1) : i1;
    std::size_t j2 = i2 == 0 || eval_bool(goal.consequents[i2 - 1], lab) ? (i2 + 1) % (ca.n + 1) : i2;
    ca.counter_next[c] = ca.config(s, j1, j2);
    ca.reset1[c] = i1 == 0;
    ca.reset2[c] = i2 == 0;
  }
  return ca;
}

/// Turn-based expansion: coalition node per configuration (owner 1) commits a_{-j};
/// response node (owner 0, player j) then picks a_j. Nodes [0, C) are configurations,
/// node C + c * Q + q is the response node for configuration c and partial profile q.
inline ParityGame build_punish_game(const Arena& arena, const CounterArena& ca, std::size_t j) {
  std::size_t C = ca.num_configs(), Q = arena.num_partial(j);
  ParityGame g;
  g.adj.resize(C + C * Q);
  g.owner.assign(C + C * Q, 0);
  g.priority.assign(C + C * Q, 0);
  for (std::size_t c = 0; c < C; ++c) {
    g.owner[c] = 1;
    g.priority[c] = ca.reset2[c] ? 2 : ca.reset1[c] ? 1 : 0;
    std::size_t s = ca.state_of(c);
    for (std::size_t q = 0; q < Q; ++q) {
      std::size_t r = C + c * Q + q;
      g.adj[c].push_back(r);
      for (std::size_t a = 0; a < arena.num_actions(j); ++a) {
        std::size_t t = ca.step(c, arena.succ(s, arena.complete(j, q, a)));
        if (std::find(g.adj[r].begin(), g.adj[r].end(), t) == g.adj[r].end()) g.adj[r].push_back(t);
      }
    }
  }
  return g;
}

struct PunishResult {
  std::size_t player = 0;
  std::vector<char> region;  // Pun_j over base states
  CounterArena counters;
  std::vector<char> coalition_wins;   // per configuration
  std::vector<std::size_t> coalition; // configuration -> a_{-j}; npos where the coalition loses
};

inline PunishResult punish_region(const Game& game, std::size_t j) {
  const Arena& arena = game.arena;
  PunishResult r;
  r.player = j;
  r.counters = build_counter_arena(arena, game.gr1_goals()[j]);
  ParityGame g = build_punish_game(arena, r.counters, j);
  ParitySolution sol = solve_parity(g);
  std::size_t C = r.counters.num_configs(), Q = arena.num_partial(j);
  r.coalition_wins.resize(C);
  r.coalition.assign(C, npos);
  for (std::size_t c = 0; c < C; ++c) {
    r.coalition_wins[c] = sol.winner[c] == 1;
    if (r.coalition_wins[c]) r.coalition[c] = (sol.strategy[c] - C) % Q;
  }
  r.region.resize(arena.num_states());
  for (std::size_t s = 0; s < arena.num_states(); ++s) r.region[s] = r.coalition_wins[r.counters.config(s, 0, 0)];
  return r;
}

/// Every deviation a'_j from (s, profile) lands in `region`.
inline bool punishing_secure(const Arena& arena, std::size_t s, std::size_t profile, std::size_t j,
                             const std::vector<char>& region) {
  for (std::size_t a = 0; a < arena.num_actions(j); ++a)
    if (!region[arena.succ(s, arena.with_action(profile, j, a))]) return false;
  return true;
}

}  // namespace ratv
