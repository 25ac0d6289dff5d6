#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ratv/ratv.hpp"

namespace ratv::test {

inline std::string data_path(const std::string& name) { return std::string(RATV_DATA_DIR) + "/" + name; }

inline Game fixture(const std::string& name) { return io::load_game(data_path(name)); }

/// Arena with the given shape: states s0.., players p1.., actions a0.., atoms p and q.
inline Arena random_arena(std::mt19937_64& rng, std::size_t states, std::size_t players, std::size_t max_actions,
                          std::size_t atoms = 2) {
  Arena a;
  for (std::size_t i = 0; i < players; ++i) {
    a.players.push_back("p" + std::to_string(i + 1));
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_actions)(rng);
    a.actions.emplace_back();
    for (std::size_t x = 0; x < k; ++x) a.actions.back().push_back("a" + std::to_string(x));
  }
  for (std::size_t s = 0; s < states; ++s) a.states.push_back("s" + std::to_string(s));
  static const char* names[] = {"p", "q", "r", "t"};
  for (std::size_t k = 0; k < atoms; ++k) a.atoms.add(names[k]);
  std::bernoulli_distribution coin(0.5);
  a.labels.assign(states, std::vector<bool>(atoms));
  for (auto& row : a.labels)
    for (std::size_t k = 0; k < atoms; ++k) row[k] = coin(rng);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  a.transitions.resize(states * a.num_profiles());
  for (auto& t : a.transitions) t = pick(rng);
  a.validate();
  return a;
}

/// Literal or constant over the arena's atoms.
inline BoolExpr random_literal(std::mt19937_64& rng, const Arena& a) {
  std::uniform_int_distribution<std::size_t> k(0, 2 * a.atoms.size() + 1);
  std::size_t x = k(rng);
  if (x == 2 * a.atoms.size()) return BoolExpr::top();
  if (x == 2 * a.atoms.size() + 1) return BoolExpr::bottom();
  BoolExpr at = BoolExpr::atom(x / 2);
  return x % 2 ? BoolExpr::negation(at) : at;
}

/// GR(1) formula with at most `max_side` entries per side.
inline Gr1Formula random_gr1(std::mt19937_64& rng, const Arena& a, std::size_t max_side = 1) {
  std::uniform_int_distribution<std::size_t> n(0, max_side);
  Gr1Formula g;
  for (std::size_t k = n(rng); k > 0; --k) g.antecedents.push_back(random_literal(rng, a));
  for (std::size_t k = n(rng); k > 0; --k) g.consequents.push_back(random_literal(rng, a));
  return g;
}

inline Game random_gr1_game(std::mt19937_64& rng, std::size_t states, std::size_t players = 2,
                            std::size_t max_actions = 2, std::size_t max_side = 1) {
  Game g;
  g.arena = random_arena(rng, std::uniform_int_distribution<std::size_t>(1, states)(rng), players, max_actions);
  std::vector<Gr1Formula> goals;
  for (std::size_t i = 0; i < players; ++i) goals.push_back(random_gr1(rng, g.arena, max_side));
  g.goals = goals;
  return g;
}

inline Game random_mp_game(std::mt19937_64& rng, std::size_t states, std::size_t players = 2,
                           std::size_t max_actions = 2, std::int64_t max_weight = 2) {
  Game g;
  g.arena = random_arena(rng, std::uniform_int_distribution<std::size_t>(1, states)(rng), players, max_actions);
  std::uniform_int_distribution<std::int64_t> w(-max_weight, max_weight);
  Weights ws(players, std::vector<std::int64_t>(g.arena.num_states()));
  for (auto& row : ws)
    for (auto& x : row) x = w(rng);
  g.goals = ws;
  return g;
}

inline LtlFormula atom(const Arena& a, const std::string& name) { return LtlFormula::atom(*a.atoms.find(name)); }

}  // namespace ratv::test
