#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ratv/formula.hpp"
#include "ratv/rational.hpp"

namespace ratv {

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Concurrent game arena. Action profiles are encoded as mixed-radix integers with
/// player 0 most significant, so profile order is lexicographic in per-player actions.
struct Arena {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;  // per player
  std::vector<std::string> states;
  std::size_t initial = 0;
  Alphabet atoms;
  std::vector<std::vector<bool>> labels;  // [state][atom]
  std::vector<std::size_t> transitions;   // [state * num_profiles() + profile]

  std::size_t num_players() const { return players.size(); }
  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions(std::size_t i) const { return actions[i].size(); }

  std::size_t num_profiles() const {
    std::size_t p = 1;
    for (const auto& a : actions) p *= a.size();
    return p;
  }

  std::size_t succ(std::size_t s, std::size_t profile) const { return transitions[s * num_profiles() + profile]; }

  /// Place value of player i's action inside a profile index.
  std::size_t radix(std::size_t i) const {
    std::size_t r = 1;
    for (std::size_t k = i + 1; k < actions.size(); ++k) r *= actions[k].size();
    return r;
  }

  std::size_t action_of(std::size_t profile, std::size_t i) const { return profile / radix(i) % actions[i].size(); }

  std::vector<std::size_t> decode(std::size_t profile) const {
    std::vector<std::size_t> a(num_players());
    for (std::size_t i = num_players(); i-- > 0;) {
      a[i] = profile % actions[i].size();
      profile /= actions[i].size();
    }
    return a;
  }

  std::size_t encode(const std::vector<std::size_t>& a) const {
    std::size_t p = 0;
    for (std::size_t i = 0; i < num_players(); ++i) p = p * actions[i].size() + a[i];
    return p;
  }

  /// (a_{-i}, a'_i): the profile with player i's action replaced.
  std::size_t with_action(std::size_t profile, std::size_t i, std::size_t a) const {
    std::size_t r = radix(i);
    return profile - (profile / r % actions[i].size()) * r + a * r;
  }

  /// Number of partial profiles a_{-j}.
  std::size_t num_partial(std::size_t j) const { return num_profiles() / actions[j].size(); }

  std::size_t partial_of(std::size_t profile, std::size_t j) const {
    std::size_t r = radix(j);
    return profile / (actions[j].size() * r) * r + profile % r;
  }

  std::size_t complete(std::size_t j, std::size_t partial, std::size_t a) const {
    std::size_t r = radix(j);
    return partial / r * (actions[j].size() * r) + a * r + partial % r;
  }

  std::optional<std::size_t> state_index(const std::string& name) const { return find(states, name); }
  std::optional<std::size_t> player_index(const std::string& name) const { return find(players, name); }
  std::optional<std::size_t> action_index(std::size_t i, const std::string& name) const { return find(actions[i], name); }

  std::string profile_name(std::size_t profile) const {
    std::string out = "(";
    auto a = decode(profile);
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + actions[i][a[i]];
    return out + ")";
  }

  void validate() const {
    if (players.empty()) throw ModelError("arena has no players");
    if (states.empty()) throw ModelError("arena has no states");
    if (actions.size() != players.size()) throw ModelError("action sets do not match players");
    for (std::size_t i = 0; i < players.size(); ++i)
      if (actions[i].empty()) throw ModelError("player '" + players[i] + "' has no actions");
    if (initial >= states.size()) throw ModelError("initial state out of range");
    if (labels.size() != states.size()) throw ModelError("label table does not match states");
    for (const auto& l : labels)
      if (l.size() != atoms.size()) throw ModelError("label row does not match atoms");
    if (transitions.size() != states.size() * num_profiles()) throw ModelError("transition table is not total");
    for (std::size_t t : transitions)
      if (t >= states.size()) throw ModelError("transition target out of range");
  }

 private:
  static std::optional<std::size_t> find(const std::vector<std::string>& v, const std::string& name) {
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  }
};

using Weights = std::vector<std::vector<std::int64_t>>;  // [player][state]

struct Game {
  Arena arena;
  std::variant<std::vector<Gr1Formula>, Weights> goals;

  bool is_gr1() const { return goals.index() == 0; }
  bool is_mp() const { return goals.index() == 1; }
  const std::vector<Gr1Formula>& gr1_goals() const { return std::get<0>(goals); }
  const Weights& weights() const { return std::get<1>(goals); }

  void validate() const {
    arena.validate();
    if (is_gr1()) {
      if (gr1_goals().size() != arena.num_players()) throw ModelError("every player needs exactly one GR(1) goal");
    } else {
      if (weights().size() != arena.num_players()) throw ModelError("weight table does not match players");
      for (const auto& w : weights())
        if (w.size() != arena.num_states()) throw ModelError("weight row does not match states");
    }
  }
};

// ---------------------------------------------------------------------------
// Lassos

struct Step {
  std::size_t state = 0;
  std::size_t profile = 0;
  friend auto operator<=>(const Step&, const Step&) = default;
};

/// Ultimately periodic path prefix . cycle^omega.
struct Lasso {
  std::vector<Step> prefix;
  std::vector<Step> cycle;

  friend bool operator==(const Lasso&, const Lasso&) = default;

  std::size_t start() const { return prefix.empty() ? cycle.front().state : prefix.front().state; }
  std::size_t size() const { return prefix.size() + cycle.size(); }
  const Step& at(std::size_t k) const { return k < prefix.size() ? prefix[k] : cycle[k - prefix.size()]; }

  template <typename F>
  void for_each_step(F&& f) const {
    for (const auto& st : prefix) f(st);
    for (const auto& st : cycle) f(st);
  }
};

/// Returns a description of the first violated step-consistency condition, if any.
inline std::optional<std::string> lasso_error(const Arena& arena, const Lasso& l, std::size_t start) {
  if (l.cycle.empty()) return "lasso cycle is empty";
  std::size_t P = arena.num_profiles();
  for (std::size_t k = 0; k < l.size(); ++k) {
    const Step& st = l.at(k);
    if (st.state >= arena.num_states()) return "step " + std::to_string(k) + " has an unknown state";
    if (st.profile >= P) return "step " + std::to_string(k) + " has an unknown profile";
  }
  if (l.start() != start) return "lasso does not begin at the start state";
  for (std::size_t k = 0; k < l.size(); ++k) {
    const Step& st = l.at(k);
    std::size_t next = k + 1 < l.size() ? l.at(k + 1).state : l.cycle.front().state;
    if (arena.succ(st.state, st.profile) != next)
      return "step " + std::to_string(k) + " from '" + arena.states[st.state] + "' under " +
             arena.profile_name(st.profile) + " does not reach '" + arena.states[next] + "'";
  }
  return std::nullopt;
}

inline void validate_lasso(const Arena& arena, const Lasso& l, std::size_t start) {
  if (auto e = lasso_error(arena, l, start)) throw ModelError(*e);
}

/// Canonical representative of the infinite path: primitive cycle, shortest prefix,
/// then the cycle rotated to its lexicographically least rotation (extending the prefix).
inline Lasso canonicalize(Lasso l) {
  auto& c = l.cycle;
  std::size_t n = c.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t k = d; k < n && periodic; ++k) periodic = c[k] == c[k - d];
    if (periodic) {
      c.resize(d);
      break;
    }
  }
  while (!l.prefix.empty() && l.prefix.back() == c.back()) {
    std::rotate(c.rbegin(), c.rbegin() + 1, c.rend());
    l.prefix.pop_back();
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < c.size(); ++r) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Step& a = c[(r + k) % c.size()];
      const Step& b = c[(best + k) % c.size()];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  l.prefix.insert(l.prefix.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(best));
  std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(best), c.end());
  return l;
}

// ---------------------------------------------------------------------------
// Strategies

/// Finite-state strategy with output: q' = step[q * P + profile], action = output[q].
struct TransducerStrategy {
  std::size_t num_states = 1;
  std::size_t initial = 0;
  std::vector<std::size_t> step;
  std::vector<std::size_t> output;

  std::size_t next(std::size_t q, std::size_t profile, std::size_t num_profiles) const {
    return step[q * num_profiles + profile];
  }

  static TransducerStrategy constant(std::size_t action, std::size_t num_profiles) {
    return {1, 0, std::vector<std::size_t>(num_profiles, 0), {action}};
  }
};

using StrategyProfile = std::vector<TransducerStrategy>;

inline void validate_profile(const Arena& arena, const StrategyProfile& sp) {
  if (sp.size() != arena.num_players()) throw ModelError("strategy profile does not match players");
  std::size_t P = arena.num_profiles();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const auto& t = sp[i];
    if (t.num_states == 0 || t.initial >= t.num_states) throw ModelError("transducer has no valid initial state");
    if (t.step.size() != t.num_states * P || t.output.size() != t.num_states)
      throw ModelError("transducer tables have the wrong size");
    for (std::size_t q : t.step)
      if (q >= t.num_states) throw ModelError("transducer step leaves its state set");
    for (std::size_t a : t.output)
      if (a >= arena.num_actions(i)) throw ModelError("transducer outputs an action outside its player's set");
  }
}

/// The unique outcome of a profile from `start` (default: the initial state).
inline Lasso play(const Arena& arena, const StrategyProfile& sp, std::optional<std::size_t> start = std::nullopt) {
  validate_profile(arena, sp);
  std::size_t P = arena.num_profiles();
  std::vector<std::size_t> config(sp.size() + 1);
  config[0] = start.value_or(arena.initial);
  for (std::size_t i = 0; i < sp.size(); ++i) config[i + 1] = sp[i].initial;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  std::vector<Step> steps;
  std::vector<std::size_t> act(sp.size());
  while (true) {
    auto [it, fresh] = seen.emplace(config, steps.size());
    if (!fresh) {
      Lasso l;
      l.prefix.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(it->second));
      l.cycle.assign(steps.begin() + static_cast<std::ptrdiff_t>(it->second), steps.end());
      return l;
    }
    for (std::size_t i = 0; i < sp.size(); ++i) act[i] = sp[i].output[config[i + 1]];
    std::size_t p = arena.encode(act);
    steps.push_back({config[0], p});
    config[0] = arena.succ(config[0], p);
    for (std::size_t i = 0; i < sp.size(); ++i) config[i + 1] = sp[i].next(config[i + 1], p, P);
  }
}

// ---------------------------------------------------------------------------
// Payoffs

inline Rational mp_payoff(const Lasso& l, const Weights& w, std::size_t player) {
  mpz_class total = 0;
  for (const auto& st : l.cycle) total += static_cast<long>(w[player][st.state]);
  return Rational(mpq_class(total, static_cast<unsigned long>(l.cycle.size())));
}

/// Each antecedent seen on the cycle implies each consequent seen on the cycle.
inline bool gr1_holds(const Lasso& l, const std::vector<std::vector<bool>>& labels, const Gr1Formula& g) {
  auto seen = [&](const BoolExpr& e) {
    for (const auto& st : l.cycle)
      if (eval_bool(e, labels[st.state])) return true;
    return false;
  };
  for (const auto& a : g.antecedents)
    if (!seen(a)) return true;
  for (const auto& c : g.consequents)
    if (!seen(c)) return false;
  return true;
}

inline int gr1_payoff(const Lasso& l, const Arena& arena, const Gr1Formula& g) {
  return gr1_holds(l, arena.labels, g) ? 1 : 0;
}

using PlayerSet = std::vector<std::size_t>;  // sorted player indices

/// Win and Lose over the lasso's path.
inline std::pair<PlayerSet, PlayerSet> winners_losers(const Game& game, const Lasso& l) {
  if (!game.is_gr1()) throw ModelError("winners and losers are defined for GR(1) games only");
  PlayerSet win, lose;
  for (std::size_t i = 0; i < game.arena.num_players(); ++i)
    (gr1_payoff(l, game.arena, game.gr1_goals()[i]) ? win : lose).push_back(i);
  return {win, lose};
}

}  // namespace ratv
