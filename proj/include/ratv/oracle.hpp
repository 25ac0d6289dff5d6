#pragma once

// Brute-force reference implementations for tiny instances. Uses only core-model types.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/formula.hpp"
#include "ratv/rational.hpp"

namespace ratv::oracle {

class SizeLimit : public std::runtime_error {
 public:
  explicit SizeLimit(const std::string& what) : std::runtime_error("oracle size limit: " + what) {}
};

/// GR(1) games: prefixes are walks of at most `prefix_bound` steps; cycles are closed walks over
/// at most `cycle_bound` distinct (state, profile) steps.
/// Mean-payoff games: cycle combinations are multisets of simple cycles of total length at most
/// `cycle_bound`.
/// With `memoryless_only` unset, brute_pun_gr1 lets the coalition remember the counter configuration.
struct OracleConfig {
  std::size_t prefix_bound = 4;
  std::size_t cycle_bound = 12;
  bool memoryless_only = true;

  /// Bounds covering every simple prefix and every step set of the arena.
  static OracleConfig for_game(const Game& game) {
    OracleConfig c;
    c.prefix_bound = std::max<std::size_t>(1, game.arena.num_states());
    c.cycle_bound = std::max<std::size_t>(12, game.arena.num_states() * game.arena.num_profiles());
    return c;
  }
};

namespace detail {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

inline std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit, const char* what) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    r *= std::max<std::uint64_t>(base, 1);
    if (r > limit) throw SizeLimit(what);
  }
  return r;
}

/// Decodes strategy number `code` into digits of base `base`.
inline void digits(std::uint64_t code, std::uint64_t base, std::vector<std::size_t>& out) {
  for (auto& d : out) {
    d = static_cast<std::size_t>(code % base);
    code /= base;
  }
}

inline std::vector<std::size_t> lasso_states(const Lasso& l) {
  std::vector<std::size_t> s;
  l.for_each_step([&](const Step& st) { s.push_back(st.state); });
  return s;
}

}  // namespace detail

/// Truth of f on the word of a lasso, by fixpoint iteration over lasso positions.
inline bool ltl_holds_direct(const LtlFormula& f, const Lasso& l, const std::vector<std::vector<bool>>& labels) {
  std::vector<std::size_t> states = detail::lasso_states(l);
  std::size_t L = states.size(), loop = l.prefix.size();
  auto next = [&](std::size_t k) { return k + 1 < L ? k + 1 : loop; };
  using K = LtlFormula::Kind;
  std::function<std::vector<char>(const LtlFormula&)> eval = [&](const LtlFormula& g) {
    std::vector<char> t(L, 0);
    switch (g.kind()) {
      case K::True:
        std::fill(t.begin(), t.end(), 1);
        return t;
      case K::False:
        return t;
      case K::Atom:
        for (std::size_t k = 0; k < L; ++k) t[k] = labels[states[k]][g.atom_id()];
        return t;
      default:
        break;
    }
    std::vector<char> a = eval(g.lhs());
    std::vector<char> b = g.is_binary() ? eval(g.rhs()) : std::vector<char>{};
    auto fix = [&](bool least, auto&& rule) {
      std::fill(t.begin(), t.end(), least ? 0 : 1);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k = L; k-- > 0;) {
          char v = rule(k);
          if (v != t[k]) {
            t[k] = v;
            changed = true;
          }
        }
      }
    };
    switch (g.kind()) {
      case K::Not:
        for (std::size_t k = 0; k < L; ++k) t[k] = !a[k];
        break;
      case K::And:
        for (std::size_t k = 0; k < L; ++k) t[k] = a[k] && b[k];
        break;
      case K::Or:
        for (std::size_t k = 0; k < L; ++k) t[k] = a[k] || b[k];
        break;
      case K::Implies:
        for (std::size_t k = 0; k < L; ++k) t[k] = !a[k] || b[k];
        break;
      case K::Next:
        for (std::size_t k = 0; k < L; ++k) t[k] = a[next(k)];
        break;
      case K::Until:
        fix(true, [&](std::size_t k) -> char { return b[k] || (a[k] && t[next(k)]); });
        break;
      case K::Release:
        fix(false, [&](std::size_t k) -> char { return b[k] && (a[k] || t[next(k)]); });
        break;
      case K::Finally:
        fix(true, [&](std::size_t k) -> char { return a[k] || t[next(k)]; });
        break;
      case K::Globally:
        fix(false, [&](std::size_t k) -> char { return a[k] && t[next(k)]; });
        break;
      default:
        break;
    }
    return t;
  };
  return eval(f)[0] != 0;
}

/// States from which the coalition -j has a memoryless strategy defeating every memoryless
/// response of j, where j may remember one counter over antecedents and one over consequents.
inline std::vector<char> brute_pun_gr1(const Game& game, std::size_t j, const OracleConfig& cfg = {}) {
  const Arena& arena = game.arena;
  const Gr1Formula& g = game.gr1_goals().at(j);
  std::size_t S = arena.num_states(), Q = arena.num_partial(j), A = arena.num_actions(j);
  std::size_t m = g.antecedents.size(), n = g.consequents.size();
  if (cfg.memoryless_only && m > 1)
    throw SizeLimit("memoryless coalition strategies need at most one antecedent");
  std::size_t C = S * (m + 1) * (n + 1);
  auto cfg_of = [&](std::size_t s, std::size_t i1, std::size_t i2) { return (s * (m + 1) + i1) * (n + 1) + i2; };
  auto step = [&](std::size_t c, std::size_t t) {
    std::size_t i1 = c / (n + 1) % (m + 1), i2 = c % (n + 1);
    if (i1 == 0 || eval_bool(g.antecedents[i1 - 1], arena.labels[t])) i1 = (i1 + 1) % (m + 1);
    if (i2 == 0 || eval_bool(g.consequents[i2 - 1], arena.labels[t])) i2 = (i2 + 1) % (n + 1);
    return cfg_of(t, i1, i2);
  };
  std::size_t coalition_domain = cfg.memoryless_only ? S : C;
  std::uint64_t nc = detail::checked_power(Q, coalition_domain, 1u << 16, "coalition strategies");
  std::uint64_t nj = detail::checked_power(A, C, 1u << 16, "response strategies");

  std::vector<char> result(S, 0);
  std::vector<std::size_t> sc(coalition_domain), sj(C);
  std::vector<std::size_t> seen(C);
  for (std::uint64_t a = 0; a < nc; ++a) {
    detail::digits(a, Q, sc);
    std::vector<char> wins(S, 1);
    for (std::uint64_t b = 0; b < nj; ++b) {
      detail::digits(b, A, sj);
      for (std::size_t s = 0; s < S; ++s) {
        if (!wins[s]) continue;
        std::fill(seen.begin(), seen.end(), detail::kNone);
        std::vector<Step> steps;
        std::size_t c = cfg_of(s, 0, 0);
        while (seen[c] == detail::kNone) {
          seen[c] = steps.size();
          std::size_t st = c / ((m + 1) * (n + 1));
          std::size_t q = sc[cfg.memoryless_only ? st : c];
          std::size_t pr = arena.complete(j, q, sj[c]);
          steps.push_back({st, pr});
          c = step(c, arena.succ(st, pr));
        }
        Lasso l;
        l.prefix.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(seen[c]));
        l.cycle.assign(steps.begin() + static_cast<std::ptrdiff_t>(seen[c]), steps.end());
        if (gr1_holds(l, arena.labels, g)) wins[s] = 0;
      }
    }
    for (std::size_t s = 0; s < S; ++s) result[s] |= wins[s];
  }
  return result;
}

/// pun_i per state: max over i's memoryless responses (state, a_{-i}) -> a_i of the min over
/// memoryless coalition strategies of the cycle average reached from the state.
inline std::vector<Rational> brute_pun_mp(const Game& game, std::size_t i, const OracleConfig& = {}) {
  const Arena& arena = game.arena;
  const auto& w = game.weights()[i];
  std::size_t S = arena.num_states(), Q = arena.num_partial(i), A = arena.num_actions(i);
  std::uint64_t nc = detail::checked_power(Q, S, 1u << 16, "coalition strategies");
  std::uint64_t ni = detail::checked_power(A, S * Q, 1u << 16, "response strategies");
  std::vector<std::optional<Rational>> best(S);
  std::vector<std::size_t> sc(S), si(S * Q), seen(S);
  for (std::uint64_t b = 0; b < ni; ++b) {
    detail::digits(b, A, si);
    std::vector<std::optional<Rational>> worst(S);
    for (std::uint64_t a = 0; a < nc; ++a) {
      detail::digits(a, Q, sc);
      for (std::size_t s = 0; s < S; ++s) {
        std::fill(seen.begin(), seen.end(), detail::kNone);
        std::vector<std::size_t> path;
        std::size_t x = s;
        while (seen[x] == detail::kNone) {
          seen[x] = path.size();
          path.push_back(x);
          x = arena.succ(x, arena.complete(i, sc[x], si[x * Q + sc[x]]));
        }
        std::int64_t sum = 0;
        for (std::size_t k = seen[x]; k < path.size(); ++k) sum += w[path[k]];
        Rational avg(sum, static_cast<std::int64_t>(path.size() - seen[x]));
        if (!worst[s] || avg < *worst[s]) worst[s] = avg;
      }
    }
    for (std::size_t s = 0; s < S; ++s)
      if (!best[s] || *worst[s] > *best[s]) best[s] = worst[s];
  }
  std::vector<Rational> out;
  for (auto& v : best) out.push_back(*v);
  return out;
}

/// Simple cycles (vertex lists, smallest vertex first) of the graph induced by `keep`.
inline std::vector<std::vector<std::size_t>> simple_cycles(const std::vector<std::vector<char>>& edge,
                                                           const std::vector<char>& keep) {
  std::size_t n = edge.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  std::vector<char> on(n, 0);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t root, std::size_t v) {
    for (std::size_t u = root; u < n; ++u) {
      if (!edge[v][u] || !keep[u]) continue;
      if (u == root) {
        out.push_back(path);
      } else if (!on[u]) {
        on[u] = 1;
        path.push_back(u);
        dfs(root, u);
        path.pop_back();
        on[u] = 0;
      }
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    if (!keep[r]) continue;
    path = {r};
    on[r] = 1;
    dfs(r, r);
    on[r] = 0;
  }
  return out;
}

/// reach[u][v]: v reachable from u by a nonempty path inside `keep`.
inline std::vector<std::vector<char>> closure(const std::vector<std::vector<char>>& edge, const std::vector<char>& keep) {
  std::size_t n = edge.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) r[u][v] = keep[u] && keep[v] && edge[u][v];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u)
      if (r[u][k])
        for (std::size_t v = 0; v < n; ++v)
          if (r[k][v]) r[u][v] = 1;
  return r;
}

/// Calls `visit(counts, cycles)` for every nonempty multiset of pairwise mutually reachable simple
/// cycles of the graph induced by `keep`, with total length at most `bound`. Stops when `visit`
/// returns true and reports whether it did.
inline bool for_each_cycle_multiset(
    const std::vector<std::vector<char>>& edge, const std::vector<char>& keep, std::size_t bound,
    const std::function<bool(const std::vector<std::size_t>&, const std::vector<std::vector<std::size_t>>&)>& visit) {
  auto cycles = simple_cycles(edge, keep);
  auto reach = closure(edge, keep);
  // group cycles by the strongly connected class of their first vertex
  std::map<std::vector<char>, std::vector<std::vector<std::size_t>>> groups;
  for (auto& c : cycles) {
    std::size_t v = c.front();
    std::vector<char> cls(edge.size(), 0);
    for (std::size_t u = 0; u < edge.size(); ++u) cls[u] = u == v || (reach[v][u] && reach[u][v]);
    groups[cls].push_back(std::move(c));
  }
  for (const auto& [cls, group] : groups) {
    std::vector<std::size_t> counts(group.size(), 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t used) {
      if (k == group.size()) {
        if (used == 0) return false;
        return visit(counts, group);
      }
      for (std::size_t c = 0; used + c * group[k].size() <= bound; ++c) {
        counts[k] = c;
        if (rec(k + 1, used + c * group[k].size())) return true;
      }
      counts[k] = 0;
      return false;
    };
    if (rec(0, 0)) return true;
  }
  return false;
}

/// Is there a multiset of mutually reachable simple cycles, avoiding `avoid`, whose total weight
/// is non-negative in every dimension and which visits every set in `visit_sets`?
inline bool brute_cycle_combination(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    const std::vector<std::vector<Rational>>& weight,
                                    const std::vector<std::vector<char>>& visit_sets, const std::vector<char>& avoid,
                                    std::size_t bound) {
  std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) edge[u][v] = 1;
  std::vector<char> keep(n, 1);
  for (std::size_t v = 0; v < n && v < avoid.size(); ++v) keep[v] = !avoid[v];
  return for_each_cycle_multiset(edge, keep, bound, [&](const auto& counts, const auto& cycles) {
    for (const auto& dim : weight) {
      Rational sum;
      for (std::size_t c = 0; c < cycles.size(); ++c)
        for (std::size_t v : cycles[c]) sum += dim[v] * Rational(static_cast<std::int64_t>(counts[c]));
      if (sum.sign() < 0) return false;
    }
    for (const auto& set : visit_sets) {
      bool hit = false;
      for (std::size_t c = 0; c < cycles.size(); ++c)
        if (counts[c])
          for (std::size_t v : cycles[c]) hit |= set[v] != 0;
      if (!hit) return false;
    }
    return true;
  });
}

namespace detail {

/// Closed walk from `entry` covering every step in `steps` (a set of (state, profile) pairs
/// that is strongly connected under "successor state starts the next step").
inline std::vector<Step> covering_cycle(const Arena& arena, const std::vector<Step>& steps, std::size_t entry) {
  std::size_t k = steps.size();
  auto follows = [&](std::size_t u, std::size_t v) {
    return steps[v].state == arena.succ(steps[u].state, steps[u].profile);
  };
  // shortest step path from u to v, excluding u and ending with v
  auto bfs = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> prev(k, k);
    std::vector<std::size_t> queue{from};
    for (std::size_t h = 0; h < queue.size() && prev[to] == k; ++h)
      for (std::size_t v = 0; v < k; ++v)
        if (prev[v] == k && follows(queue[h], v)) {
          prev[v] = queue[h];
          queue.push_back(v);
        }
    std::vector<std::size_t> path;
    for (std::size_t v = to;; v = prev[v]) {
      path.push_back(v);
      if (prev[v] == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  std::size_t start = 0;
  while (steps[start].state != entry) ++start;
  std::vector<std::size_t> walk{start};
  for (std::size_t v = 0; v < k; ++v) {
    if (v == start) continue;
    auto p = bfs(walk.back(), v);
    walk.insert(walk.end(), p.begin(), p.end());
  }
  if (k > 1) {
    auto p = bfs(walk.back(), start);
    walk.insert(walk.end(), p.begin(), p.end() - 1);
  }
  std::vector<Step> out;
  for (std::size_t v : walk) out.push_back(steps[v]);
  return out;
}

}  // namespace detail

/// E-Nash for GR(1) games: some lasso satisfies the property and each of its steps is
/// punishing-secure for every player losing on it. Cycles range over all strongly connected step
/// sets (so every set of infinitely visited states is covered) and prefixes over walks of at most
/// `prefix_bound` steps, which covers all simple prefixes. Exact for specifications decided by the
/// visited and infinitely visited state sets.
inline bool brute_e_nash_gr1(const Game& game, const LtlFormula& spec, const OracleConfig& cfg = {}) {
  const Arena& arena = game.arena;
  std::size_t S = arena.num_states(), P = arena.num_profiles(), N = arena.num_players();
  std::size_t K = S * P;
  if (K > 20) throw SizeLimit("too many steps to enumerate step sets");
  std::vector<std::vector<char>> pun;
  for (std::size_t j = 0; j < N; ++j) pun.push_back(brute_pun_gr1(game, j, cfg));
  auto step_of = [&](std::size_t k) { return Step{k / P, k % P}; };
  auto next_state = [&](std::size_t k) { return arena.succ(k / P, k % P); };
  auto secure = [&](std::size_t s, std::size_t pr, const std::vector<std::size_t>& losers) {
    for (std::size_t j : losers)
      for (std::size_t a = 0; a < arena.num_actions(j); ++a)
        if (!pun[j][arena.succ(s, arena.with_action(pr, j, a))]) return false;
    return true;
  };

  for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > cfg.cycle_bound) continue;
    // strong connectivity of the step set
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < K; ++k)
      if (mask >> k & 1) members.push_back(k);
    auto reach_from = [&](std::size_t root, bool forward) {
      std::uint32_t seen = 1u << root;
      std::vector<std::size_t> stack{root};
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : members) {
          bool e = forward ? next_state(u) == v / P : next_state(v) == u / P;
          if (e && !(seen >> v & 1)) {
            seen |= 1u << v;
            stack.push_back(v);
          }
        }
      }
      return seen;
    };
    std::size_t root = members.front();
    if (reach_from(root, true) != mask || reach_from(root, false) != mask) continue;
    bool closes = false;
    for (std::size_t v : members) closes |= next_state(v) == root / P;
    if (!closes) continue;

    std::vector<Step> steps;
    for (std::size_t k : members) steps.push_back(step_of(k));
    std::set<std::size_t> cyc_states;
    for (auto& st : steps) cyc_states.insert(st.state);
    Lasso probe;
    probe.cycle = detail::covering_cycle(arena, steps, steps.front().state);
    std::vector<std::size_t> losers;
    for (std::size_t i = 0; i < N; ++i)
      if (!gr1_holds(probe, arena.labels, game.gr1_goals()[i])) losers.push_back(i);
    bool ok = true;
    for (auto& st : steps) ok = ok && secure(st.state, st.profile, losers);
    if (!ok) continue;

    // prefixes: secure walks from the initial state entering the cycle's state set
    std::vector<Step> pre;
    std::function<bool(std::size_t)> walk = [&](std::size_t s) {
      if (cyc_states.count(s)) {
        Lasso l;
        l.prefix = pre;
        l.cycle = detail::covering_cycle(arena, steps, s);
        if (ltl_holds_direct(spec, l, arena.labels)) return true;
      }
      if (pre.size() >= cfg.prefix_bound) return false;
      for (std::size_t pr = 0; pr < P; ++pr) {
        if (!secure(s, pr, losers)) continue;
        pre.push_back({s, pr});
        bool found = walk(arena.succ(s, pr));
        pre.pop_back();
        if (found) return true;
      }
      return false;
    };
    if (walk(arena.initial)) return true;
  }
  return false;
}

namespace detail {

/// Every threshold vector z with z_i among player i's punishment values.
inline std::vector<std::vector<Rational>> threshold_grid(const std::vector<std::vector<Rational>>& pun) {
  std::vector<std::vector<Rational>> sets;
  for (const auto& v : pun) {
    std::set<Rational> s(v.begin(), v.end());
    sets.emplace_back(s.begin(), s.end());
  }
  std::vector<std::vector<Rational>> out{{}};
  for (const auto& s : sets) {
    std::vector<std::vector<Rational>> next;
    for (const auto& z : out)
      for (const auto& x : s) {
        auto y = z;
        y.push_back(x);
        next.push_back(std::move(y));
      }
    out = std::move(next);
  }
  return out;
}

/// Visits every cycle combination of G[z] meeting the payoff thresholds and the GR(1) property,
/// passing per-player average payoffs. Stops when `visit` returns true.
inline bool for_each_mp_equilibrium(const Game& game, const Gr1Formula& spec, const OracleConfig& cfg,
                                    const std::function<bool(const std::vector<Rational>&)>& visit) {
  const Arena& arena = game.arena;
  const Weights& w = game.weights();
  std::size_t S = arena.num_states(), P = arena.num_profiles(), N = arena.num_players();
  std::vector<std::vector<Rational>> pun;
  for (std::size_t i = 0; i < N; ++i) pun.push_back(brute_pun_mp(game, i, cfg));
  for (const auto& z : threshold_grid(pun)) {
    std::vector<char> alive(S, 0);
    for (std::size_t s = 0; s < S; ++s) {
      alive[s] = s == arena.initial;
      bool ok = true;
      for (std::size_t i = 0; i < N; ++i) ok = ok && pun[i][s] <= z[i];
      alive[s] |= ok;
    }
    std::vector<std::vector<char>> edge(S, std::vector<char>(S, 0));
    for (std::size_t s = 0; s < S; ++s) {
      if (!alive[s]) continue;
      for (std::size_t pr = 0; pr < P; ++pr) {
        bool ok = alive[arena.succ(s, pr)];
        for (std::size_t i = 0; i < N && ok; ++i)
          for (std::size_t a = 0; a < arena.num_actions(i); ++a)
            if (pun[i][arena.succ(s, arena.with_action(pr, i, a))] > z[i]) ok = false;
        if (ok) edge[s][arena.succ(s, pr)] = 1;
      }
    }
    std::vector<char> reach(S, 0);
    std::vector<std::size_t> stack{arena.initial};
    reach[arena.initial] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < S; ++v)
        if (edge[u][v] && !reach[v]) {
          reach[v] = 1;
          stack.push_back(v);
        }
    }
    auto holds = [&](const BoolExpr& e, std::size_t s) { return eval_bool(e, arena.labels[s]); };
    // one program visiting every consequent, one per antecedent avoiding it
    std::vector<std::optional<std::size_t>> programs{std::nullopt};
    for (std::size_t l = 0; l < spec.antecedents.size(); ++l) programs.emplace_back(l);
    for (const auto& prog : programs) {
      std::vector<char> keep = reach;
      if (prog)
        for (std::size_t s = 0; s < S; ++s)
          if (holds(spec.antecedents[*prog], s)) keep[s] = 0;
      bool stop = for_each_cycle_multiset(edge, keep, cfg.cycle_bound, [&](const auto& counts, const auto& cycles) {
        std::size_t len = 0;
        for (std::size_t c = 0; c < cycles.size(); ++c) len += counts[c] * cycles[c].size();
        std::vector<Rational> pay;
        for (std::size_t i = 0; i < N; ++i) {
          std::int64_t sum = 0;
          for (std::size_t c = 0; c < cycles.size(); ++c)
            for (std::size_t v : cycles[c]) sum += static_cast<std::int64_t>(counts[c]) * w[i][v];
          pay.emplace_back(sum, static_cast<std::int64_t>(len));
          if (pay.back() < z[i]) return false;
        }
        if (!prog)
          for (const auto& th : spec.consequents) {
            bool hit = false;
            for (std::size_t c = 0; c < cycles.size(); ++c)
              if (counts[c])
                for (std::size_t v : cycles[c]) hit |= holds(th, v);
            if (!hit) return false;
          }
        return visit(pay);
      });
      if (stop) return true;
    }
  }
  return false;
}

}  // namespace detail

/// E-Nash for mean-payoff games: for some z drawn from the punishment values, a combination of
/// mutually reachable simple cycles of G[z] meets z and the property.
inline bool brute_e_nash_mp(const Game& game, const Gr1Formula& spec, const OracleConfig& cfg = {}) {
  return detail::for_each_mp_equilibrium(game, spec, cfg, [](const std::vector<Rational>&) { return true; });
}

inline bool brute_e_nash(const Game& game, const Gr1Formula& spec, const OracleConfig& cfg = {}) {
  return game.is_mp() ? brute_e_nash_mp(game, spec, cfg) : brute_e_nash_gr1(game, gr1_to_ltl(spec), cfg);
}

/// Exact best (maximise) or worst welfare over the equilibria enumerated by brute_e_nash_mp;
/// nullopt when there are none.
inline std::optional<Rational> brute_opt_welfare(const Game& game, const Gr1Formula& spec, bool utilitarian,
                                                 bool maximise, const OracleConfig& cfg = {}) {
  std::optional<Rational> best;
  detail::for_each_mp_equilibrium(game, spec, cfg, [&](const std::vector<Rational>& pay) {
    Rational v = pay[0];
    for (std::size_t i = 1; i < pay.size(); ++i) v = utilitarian ? v + pay[i] : min(v, pay[i]);
    if (!best || (maximise ? v > *best : v < *best)) best = v;
    return false;
  });
  return best;
}

}  // namespace ratv::oracle
