#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/formula.hpp"
#include "ratv/lasso_search.hpp"
#include "ratv/lp.hpp"
#include "ratv/ltl2buchi.hpp"
#include "ratv/punish_gr1.hpp"
#include "ratv/punish_mp.hpp"

namespace ratv {

struct Specification {
  enum class Kind { Gr1, Ltl };
  Kind kind = Kind::Gr1;
  Gr1Formula gr1;
  LtlFormula ltl;

  static Specification top() { return {}; }
  static Specification from_gr1(Gr1Formula g) { return {Kind::Gr1, std::move(g), {}}; }
  static Specification from_ltl(LtlFormula f) { return {Kind::Ltl, {}, std::move(f)}; }

  LtlFormula as_ltl() const { return kind == Kind::Gr1 ? gr1_to_ltl(gr1) : ltl; }
};

struct Witness {
  Lasso lasso;                               // canonical
  std::optional<PlayerSet> candidate_winners; // W, for GR(1) games
  std::optional<std::vector<Rational>> z;    // thresholds, for mean-payoff games
  PlayerSet winners;                         // Win over the lasso (GR(1) games)
  std::vector<Rational> payoffs;             // per player
};

struct Verdict {
  bool answer = false;
  std::optional<Witness> witness;
  std::size_t candidates_examined = 0;
  bool witness_gap = false;  // yes, but the cycle program's support never yielded a single cycle
};

struct EngineOptions {
  std::size_t jobs = 1;
};

/// Extra cycle constraints used by welfare queries on mean-payoff games.
struct MpConstraints {
  std::optional<Rational> payoff_floor;              // every player's payoff >= max(z_i, floor)
  std::vector<std::vector<Rational>> extra_dims;     // [dimension][state], cycle average >= 0
};

namespace detail {

/// Lowest index in [begin, count) whose result satisfies `accept`, evaluating up to `jobs` indices
/// concurrently. Deterministic: the same index wins for every job count.
template <typename R, typename F, typename Accept>
std::pair<std::size_t, std::optional<R>> first_accepted(std::size_t begin, std::size_t count, std::size_t jobs, F&& fn,
                                                        Accept&& accept) {
  if (jobs <= 1 || count - begin <= 1) {
    for (std::size_t i = begin; i < count; ++i) {
      R r = fn(i);
      if (accept(r)) return {i, std::move(r)};
    }
    return {count, std::nullopt};
  }
  std::atomic<std::size_t> next{begin}, best{count};
  std::mutex mu;
  std::map<std::size_t, R> found;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || i > best.load()) return;
      R r = fn(i);
      if (!accept(r)) continue;
      std::lock_guard<std::mutex> lock(mu);
      found.emplace(i, std::move(r));
      std::size_t b = best.load();
      while (i < b && !best.compare_exchange_weak(b, i)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, count - begin); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (found.empty()) return {count, std::nullopt};
  auto it = found.begin();
  return {it->first, std::move(it->second)};
}

/// All subsets of {0..n-1}, by increasing size then lexicographically.
inline std::vector<PlayerSet> winner_candidates(std::size_t n) {
  std::vector<PlayerSet> out;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      PlayerSet w;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) w.push_back(i);
      out.push_back(std::move(w));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

inline std::vector<Rational> gr1_payoffs(const Game& game, const Lasso& l) {
  std::vector<Rational> out;
  for (const auto& g : game.gr1_goals()) out.emplace_back(gr1_payoff(l, game.arena, g));
  return out;
}

inline std::vector<Rational> mp_payoffs(const Game& game, const Lasso& l) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < game.arena.num_players(); ++i) out.push_back(mp_payoff(l, game.weights(), i));
  return out;
}

}  // namespace detail

inline std::vector<PunishResult> punish_all(const Game& game) {
  std::vector<PunishResult> out;
  for (std::size_t j = 0; j < game.arena.num_players(); ++j) out.push_back(punish_region(game, j));
  return out;
}

inline std::vector<PunishValues> punish_values_all(const Game& game) {
  std::vector<PunishValues> out;
  for (std::size_t i = 0; i < game.arena.num_players(); ++i) out.push_back(punish_values(game, i));
  return out;
}

/// E-Nash for GR(1) games: for each W (by size, then lexicographic), search G^{-L} for a lasso
/// satisfying the property and every goal in W.
inline Verdict e_nash_gr1(const Game& game, const Specification& spec, const EngineOptions& opt = {}) {
  const Arena& arena = game.arena;
  auto pun = punish_all(game);
  std::vector<std::vector<char>> regions;
  for (const auto& p : pun) regions.push_back(p.region);
  std::optional<BuchiAutomaton> buchi;
  if (spec.kind == Specification::Kind::Ltl) buchi = translate(spec.ltl);
  auto cands = detail::winner_candidates(arena.num_players());
  auto search = [&](std::size_t idx) -> std::optional<Lasso> {
    const PlayerSet& W = cands[idx];
    PlayerSet L;
    for (std::size_t i = 0; i < arena.num_players(); ++i)
      if (!std::binary_search(W.begin(), W.end(), i)) L.push_back(i);
    RestrictedArena ra = restrict_gr1(game, L, regions);
    std::vector<Gr1Formula> objectives;
    if (!buchi) objectives.push_back(spec.gr1);
    for (std::size_t i : W) objectives.push_back(game.gr1_goals()[i]);
    return streett_nonempty(build_streett_product(arena, ra, objectives, buchi));
  };
  auto [idx, lasso] = detail::first_accepted<std::optional<Lasso>>(
      0, cands.size(), opt.jobs, search, [](const std::optional<Lasso>& l) { return l.has_value(); });
  Verdict v;
  v.candidates_examined = std::min(idx + 1, cands.size());
  if (!lasso) return v;
  v.answer = true;
  Witness w;
  w.lasso = canonicalize(**lasso);
  w.candidate_winners = cands[idx];
  w.winners = winners_losers(game, w.lasso).first;
  w.payoffs = detail::gr1_payoffs(game, w.lasso);
  v.witness = std::move(w);
  return v;
}

/// Per-player candidate thresholds {pun_i(s)}, descending.
inline std::vector<std::vector<Rational>> threshold_candidates(const std::vector<PunishValues>& pv) {
  std::vector<std::vector<Rational>> out;
  for (const auto& p : pv) {
    std::vector<Rational> c = p.value;
    std::sort(c.begin(), c.end(), [](const Rational& a, const Rational& b) { return b < a; });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// E-Nash for mean-payoff games: for each z over the candidate grid (componentwise descending,
/// player 0 most significant), search G[z] for a cycle with payoff_i >= z_i satisfying the property.
inline Verdict e_nash_mp(const Game& game, const Specification& spec, const EngineOptions& opt = {},
                         const MpConstraints& extra = {}) {
  const Arena& arena = game.arena;
  std::size_t n = arena.num_players();
  auto pv = punish_values_all(game);
  std::vector<std::vector<Rational>> values;
  for (const auto& p : pv) values.push_back(p.value);
  auto cand = threshold_candidates(pv);
  std::size_t total = 1;
  for (const auto& c : cand) total *= c.size();
  auto z_at = [&](std::size_t idx) {
    std::vector<Rational> z(n);
    for (std::size_t i = n; i-- > 0;) {
      z[i] = cand[i][idx % cand[i].size()];
      idx /= cand[i].size();
    }
    return z;
  };
  CycleSpec cs = spec.kind == Specification::Kind::Gr1 ? CycleSpec(spec.gr1) : CycleSpec(translate(spec.ltl));
  auto search = [&](std::size_t idx) {
    std::vector<Rational> z = z_at(idx);
    RestrictedArena ra = restrict_mp(game, z, values);
    std::vector<std::vector<Rational>> dims;
    for (std::size_t i = 0; i < n; ++i) {
      Rational shift = extra.payoff_floor ? max(z[i], *extra.payoff_floor) : z[i];
      std::vector<Rational> d(arena.num_states());
      for (std::size_t s = 0; s < arena.num_states(); ++s) d[s] = Rational(game.weights()[i][s]) - shift;
      dims.push_back(std::move(d));
    }
    dims.insert(dims.end(), extra.extra_dims.begin(), extra.extra_dims.end());
    return mp_lasso_search(arena, ra, dims, cs);
  };
  auto [idx, res] = detail::first_accepted<MpSearchResult>(0, total, opt.jobs, search,
                                                           [](const MpSearchResult& r) { return r.feasible; });
  Verdict v;
  v.candidates_examined = std::min(idx + 1, total);
  if (!res) return v;
  v.answer = true;
  std::size_t widx = idx;
  std::optional<MpSearchResult> found = res;
  if (!res->lasso) {
    auto [idx2, res2] = detail::first_accepted<MpSearchResult>(idx + 1, total, opt.jobs, search,
                                                               [](const MpSearchResult& r) { return r.lasso.has_value(); });
    if (!res2) {
      v.witness_gap = true;
      return v;
    }
    widx = idx2;
    found = res2;
  }
  Witness w;
  w.lasso = canonicalize(*found->lasso);
  w.z = z_at(widx);
  w.payoffs = detail::mp_payoffs(game, w.lasso);
  v.witness = std::move(w);
  return v;
}

inline Verdict e_nash(const Game& game, const Specification& spec, const EngineOptions& opt = {}) {
  return game.is_gr1() ? e_nash_gr1(game, spec, opt) : e_nash_mp(game, spec, opt);
}

/// Every equilibrium satisfies spec iff no equilibrium satisfies its negation; the witness, if
/// any, is a counterexample equilibrium run.
inline Verdict a_nash(const Game& game, const Specification& spec, const EngineOptions& opt = {}) {
  Verdict v = e_nash(game, Specification::from_ltl(negate_to_ltl(spec.as_ltl())), opt);
  v.answer = !v.answer;
  return v;
}

inline Verdict non_emptiness(const Game& game, const EngineOptions& opt = {}) {
  return e_nash(game, Specification::top(), opt);
}

// ---------------------------------------------------------------------------
// Witness checks

inline bool spec_holds(const Game& game, const Specification& spec, const Lasso& l) {
  if (spec.kind == Specification::Kind::Gr1) return gr1_holds(l, game.arena.labels, spec.gr1);
  return lasso_satisfies(spec.ltl, l, game.arena.labels);
}

/// Re-checks the equilibrium conditions on a witness; returns the first failure, if any.
inline std::optional<std::string> check_witness(const Game& game, const Specification& spec, const Witness& w) {
  const Arena& arena = game.arena;
  if (auto e = lasso_error(arena, w.lasso, arena.initial)) return e;
  if (!spec_holds(game, spec, w.lasso)) return "specification fails on the witness";
  if (game.is_gr1()) {
    auto [win, lose] = winners_losers(game, w.lasso);
    if (win != w.winners) return "recorded winners differ from the lasso's winners";
    if (w.candidate_winners)
      for (std::size_t i : *w.candidate_winners)
        if (!std::binary_search(win.begin(), win.end(), i)) return "a candidate winner loses on the lasso";
    for (std::size_t j : lose) {
      auto pr = punish_region(game, j);
      bool ok = true;
      w.lasso.for_each_step([&](const Step& st) { ok = ok && punishing_secure(arena, st.state, st.profile, j, pr.region); });
      if (!ok) return "a step is not punishing-secure for loser " + arena.players[j];
    }
    return std::nullopt;
  }
  if (!w.z) return "mean-payoff witness without thresholds";
  for (std::size_t i = 0; i < arena.num_players(); ++i) {
    auto pv = punish_values(game, i);
    const Rational& z = (*w.z)[i];
    bool ok = true;
    w.lasso.for_each_step([&](const Step& st) { ok = ok && z_secure(arena, st.state, st.profile, i, z, pv.value); });
    if (!ok) return "a step is not z-secure for " + arena.players[i];
    if (mp_payoff(w.lasso, game.weights(), i) < z) return "payoff below threshold for " + arena.players[i];
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Strategy synthesis

/// One transducer per player sharing a common state space: follow the lasso while tracking the
/// arena state; after a unilateral deviation by player j, switch for good to the memoryless
/// punishment against j. Simultaneous deviations keep replaying the lasso.
inline StrategyProfile synthesize_profile(const Game& game, const Witness& w) {
  const Arena& arena = game.arena;
  std::size_t n = arena.num_players(), P = arena.num_profiles();
  const Lasso& l = w.lasso;
  std::size_t len = l.size(), loop = l.prefix.size();

  std::vector<PunishResult> gr1;
  std::vector<PunishValues> mp;
  if (game.is_gr1()) {
    for (std::size_t j = 0; j < n; ++j) gr1.push_back(punish_region(game, j));
  } else {
    for (std::size_t i = 0; i < n; ++i) mp.push_back(punish_values(game, i));
  }

  // kind 0: conform (position, arena state); kind 1: punish (player, configuration or state)
  using Key = std::tuple<int, std::size_t, std::size_t>;
  std::map<Key, std::size_t> id;
  std::vector<Key> keys;
  auto get = [&](Key k) {
    auto [it, fresh] = id.emplace(k, keys.size());
    if (fresh) keys.push_back(k);
    return it->second;
  };
  auto arena_state = [&](const Key& k) {
    auto [kind, a, b] = k;
    if (kind == 0) return b;
    return game.is_gr1() ? gr1[a].counters.state_of(b) : b;
  };
  get({0, 0, l.start()});
  std::vector<std::size_t> step;
  for (std::size_t q = 0; q < keys.size(); ++q) {
    Key k = keys[q];
    auto [kind, a, b] = k;
    std::size_t s = arena_state(k);
    std::vector<std::size_t> row(P);
    for (std::size_t p = 0; p < P; ++p) {
      std::size_t t = arena.succ(s, p);
      if (kind == 1) {
        row[p] = game.is_gr1() ? get({1, a, gr1[a].counters.step(b, t)}) : get({1, a, t});
        continue;
      }
      std::size_t expect = l.at(a).profile, nk = a + 1 < len ? a + 1 : loop;
      std::size_t deviator = npos, diff = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (arena.action_of(p, i) != arena.action_of(expect, i)) {
          deviator = i;
          ++diff;
        }
      if (diff == 1)
        row[p] = game.is_gr1() ? get({1, deviator, gr1[deviator].counters.config(t, 0, 0)}) : get({1, deviator, t});
      else
        row[p] = get({0, nk, t});
    }
    step.resize(keys.size() * P);
    std::copy(row.begin(), row.end(), step.begin() + static_cast<std::ptrdiff_t>(q * P));
  }
  step.resize(keys.size() * P);

  StrategyProfile sp(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& t = sp[i];
    t.num_states = keys.size();
    t.initial = 0;
    t.step = step;
    t.output.resize(keys.size());
    for (std::size_t q = 0; q < keys.size(); ++q) {
      auto [kind, a, b] = keys[q];
      if (kind == 0) {
        t.output[q] = arena.action_of(l.at(a).profile, i);
        continue;
      }
      std::size_t j = a;
      std::size_t partial = game.is_gr1() ? gr1[j].coalition[b] : mp[j].coalition[b];
      if (i == j || partial == npos) {
        t.output[q] = 0;
      } else {
        t.output[q] = arena.action_of(arena.complete(j, partial, 0), i);
      }
    }
  }
  return sp;
}

}  // namespace ratv
