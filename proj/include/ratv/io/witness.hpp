#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratv/core/arena.hpp"
#include "ratv/engine.hpp"

namespace ratv::io {

using nlohmann::json;

class WitnessFormatError : public std::runtime_error {
 public:
  explicit WitnessFormatError(const std::string& what) : std::runtime_error("witness document: " + what) {}
};

namespace detail {

inline json steps_to_json(const Arena& arena, const std::vector<Step>& steps) {
  json out = json::array();
  for (const auto& st : steps) {
    json acts = json::array();
    for (std::size_t i = 0; i < arena.num_players(); ++i) acts.push_back(arena.actions[i][arena.action_of(st.profile, i)]);
    out.push_back({{"state", arena.states[st.state]}, {"actions", acts}});
  }
  return out;
}

inline std::vector<Step> steps_from_json(const Arena& arena, const json& j) {
  if (!j.is_array()) throw WitnessFormatError("lasso part is not an array");
  std::vector<Step> out;
  for (const auto& e : j) {
    auto s = arena.state_index(e.at("state").get<std::string>());
    if (!s) throw WitnessFormatError("unknown state '" + e.at("state").get<std::string>() + "'");
    const auto& acts = e.at("actions");
    if (!acts.is_array() || acts.size() != arena.num_players()) throw WitnessFormatError("wrong number of actions");
    std::vector<std::size_t> a(arena.num_players());
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto k = arena.action_index(i, acts[i].get<std::string>());
      if (!k) throw WitnessFormatError("unknown action '" + acts[i].get<std::string>() + "'");
      a[i] = *k;
    }
    out.push_back({*s, arena.encode(a)});
  }
  return out;
}

inline json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(Rational::parse(e.get<std::string>()));
  return out;
}

inline json players(const Arena& arena, const PlayerSet& ps) {
  json out = json::array();
  for (std::size_t i : ps) out.push_back(arena.players[i]);
  return out;
}

inline PlayerSet players_from_json(const Arena& arena, const json& j) {
  PlayerSet out;
  for (const auto& e : j) {
    auto p = arena.player_index(e.get<std::string>());
    if (!p) throw WitnessFormatError("unknown player '" + e.get<std::string>() + "'");
    out.push_back(*p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline json lasso_to_json(const Arena& arena, const Lasso& l) {
  return {{"prefix", detail::steps_to_json(arena, l.prefix)}, {"cycle", detail::steps_to_json(arena, l.cycle)}};
}

inline Lasso lasso_from_json(const Arena& arena, const json& j) {
  Lasso l;
  l.prefix = detail::steps_from_json(arena, j.at("prefix"));
  l.cycle = detail::steps_from_json(arena, j.at("cycle"));
  return l;
}

inline json transducers_to_json(const Arena& arena, const StrategyProfile& sp) {
  json out = json::array();
  std::size_t P = arena.num_profiles();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const auto& t = sp[i];
    json step = json::array(), output = json::array();
    for (std::size_t q = 0; q < t.num_states; ++q) {
      json row = json::array();
      for (std::size_t p = 0; p < P; ++p) row.push_back(t.step[q * P + p]);
      step.push_back(row);
      output.push_back(arena.actions[i][t.output[q]]);
    }
    out.push_back({{"player", arena.players[i]},
                   {"states", t.num_states},
                   {"initial", t.initial},
                   {"step", step},
                   {"output", output}});
  }
  return out;
}

inline StrategyProfile transducers_from_json(const Arena& arena, const json& j) {
  StrategyProfile sp(arena.num_players());
  if (!j.is_array() || j.size() != arena.num_players()) throw WitnessFormatError("need one transducer per player");
  std::size_t P = arena.num_profiles();
  for (const auto& e : j) {
    auto i = arena.player_index(e.at("player").get<std::string>());
    if (!i) throw WitnessFormatError("unknown player in transducer");
    TransducerStrategy t;
    t.num_states = e.at("states").get<std::size_t>();
    t.initial = e.at("initial").get<std::size_t>();
    const auto& step = e.at("step");
    const auto& output = e.at("output");
    if (step.size() != t.num_states || output.size() != t.num_states)
      throw WitnessFormatError("transducer tables do not match its state count");
    for (const auto& row : step) {
      if (row.size() != P) throw WitnessFormatError("transducer step row has the wrong width");
      for (const auto& q : row) t.step.push_back(q.get<std::size_t>());
    }
    for (const auto& a : output) {
      auto k = arena.action_index(*i, a.get<std::string>());
      if (!k) throw WitnessFormatError("unknown action in transducer output");
      t.output.push_back(*k);
    }
    sp[*i] = std::move(t);
  }
  validate_profile(arena, sp);
  return sp;
}

/// Full witness document for a verdict. `query` names the decision problem; for a-nash the
/// lasso, when present, is a counterexample equilibrium run.
inline json verdict_to_json(const Game& game, const std::string& query, const Verdict& v,
                            const std::optional<StrategyProfile>& transducers = std::nullopt) {
  const Arena& arena = game.arena;
  json doc;
  doc["query"] = query;
  doc["game_kind"] = game.is_mp() ? "mean-payoff" : "gr1";
  doc["verdict"] = v.answer ? "yes" : "no";
  json diag = {{"candidates_examined", v.candidates_examined}, {"witness_gap", v.witness_gap}};
  doc["diagnostics"] = diag;
  if (!v.witness) return doc;
  const Witness& w = *v.witness;
  json cand = json::object();
  if (w.candidate_winners) cand["winners"] = detail::players(arena, *w.candidate_winners);
  if (w.z) cand["z"] = detail::rationals(*w.z);
  doc["candidate"] = cand;
  doc["lasso"] = lasso_to_json(arena, w.lasso);
  if (game.is_gr1()) doc["winners"] = detail::players(arena, w.winners);
  doc["payoffs"] = detail::rationals(w.payoffs);
  if (transducers) doc["transducers"] = transducers_to_json(arena, *transducers);
  return doc;
}

/// Rebuilds the witness from a document and validates the lasso against the game.
inline Witness witness_from_json(const Game& game, const json& doc) {
  const Arena& arena = game.arena;
  if (!doc.contains("lasso")) throw WitnessFormatError("document carries no lasso");
  Witness w;
  w.lasso = lasso_from_json(arena, doc.at("lasso"));
  validate_lasso(arena, w.lasso, arena.initial);
  const json& cand = doc.at("candidate");
  if (cand.contains("winners")) w.candidate_winners = detail::players_from_json(arena, cand.at("winners"));
  if (cand.contains("z")) w.z = detail::rationals_from_json(cand.at("z"));
  if (doc.contains("winners")) w.winners = detail::players_from_json(arena, doc.at("winners"));
  w.payoffs = detail::rationals_from_json(doc.at("payoffs"));
  return w;
}

}  // namespace ratv::io
