#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/formula.hpp"

namespace ratv::io {

class GameParseError : public std::runtime_error {
 public:
  GameParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Statement {
  std::string keyword;
  std::string head;  // text between the keyword and ':' (or the whole rest when there is no ':')
  std::string body;  // text after ':'
  std::size_t line = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline bool is_identifier(const std::string& w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  return std::all_of(w.begin(), w.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::string cur;
  std::size_t line = 1, start_line = 1;
  bool in_comment = false;
  for (char c : text) {
    if (c == '\n') {
      ++line;
      in_comment = false;
      cur += ' ';
      continue;
    }
    if (in_comment) continue;
    if (c == '#') {
      in_comment = true;
      continue;
    }
    if (trim(cur).empty() && !std::isspace(static_cast<unsigned char>(c))) start_line = line;
    if (c != ';') {
      cur += c;
      continue;
    }
    std::string st = trim(cur);
    cur.clear();
    if (st.empty()) throw GameParseError("empty statement", line);
    Statement s;
    s.line = start_line;
    std::size_t k = 0;
    while (k < st.size() && (std::isalnum(static_cast<unsigned char>(st[k])) || st[k] == '_')) ++k;
    s.keyword = st.substr(0, k);
    std::string rest = st.substr(k);
    if (s.keyword != "tr" && s.keyword != "weight") {
      std::size_t colon = rest.find(':');
      if (colon == std::string::npos) throw GameParseError("expected ':' after '" + s.keyword + "'", s.line);
      s.head = trim(rest.substr(0, colon));
      s.body = trim(rest.substr(colon + 1));
    } else {
      s.head = trim(rest);
    }
    out.push_back(std::move(s));
  }
  if (!trim(cur).empty()) throw GameParseError("missing ';' at end of input", start_line);
  return out;
}

inline std::int64_t parse_int(const std::string& w, std::size_t line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) throw GameParseError("expected an integer, got '" + w + "'", line);
  return v;
}

}  // namespace detail

/// Parses the line-oriented game description. Declarations (players, states, initial, atoms,
/// actions) may appear in any order relative to the rows that use them.
inline Game parse_game(std::string_view text) {
  auto stmts = detail::split_statements(text);
  Arena arena;
  bool have_players = false, have_states = false, have_initial = false, have_atoms = false;
  std::vector<char> have_actions;

  auto declare_list = [&](const detail::Statement& s, std::vector<std::string>& into, const char* what) {
    if (!s.head.empty()) throw GameParseError(std::string("unexpected text before ':' in ") + what, s.line);
    auto ws = detail::words(s.body);
    if (ws.empty()) throw GameParseError(std::string("empty ") + what + " list", s.line);
    for (auto& w : ws) {
      if (!detail::is_identifier(w)) throw GameParseError("invalid name '" + w + "'", s.line);
      if (std::find(into.begin(), into.end(), w) != into.end())
        throw GameParseError(std::string("duplicate ") + what + " '" + w + "'", s.line);
      into.push_back(w);
    }
  };

  // declarations first
  for (const auto& s : stmts) {
    if (s.keyword == "players") {
      if (have_players) throw GameParseError("players declared twice", s.line);
      declare_list(s, arena.players, "player");
      have_players = true;
    } else if (s.keyword == "states") {
      if (have_states) throw GameParseError("states declared twice", s.line);
      declare_list(s, arena.states, "state");
      have_states = true;
    } else if (s.keyword == "atoms") {
      if (have_atoms) throw GameParseError("atoms declared twice", s.line);
      std::vector<std::string> names;
      if (!detail::words(s.body).empty()) declare_list(s, names, "atom");
      arena.atoms = Alphabet(names);
      have_atoms = true;
    }
  }
  if (!have_players) throw GameParseError("missing 'players' declaration", 0);
  if (!have_states) throw GameParseError("missing 'states' declaration", 0);
  arena.actions.assign(arena.players.size(), {});
  have_actions.assign(arena.players.size(), 0);
  arena.labels.assign(arena.states.size(), std::vector<bool>(arena.atoms.size(), false));

  auto player = [&](const std::string& name, std::size_t line) {
    auto p = arena.player_index(name);
    if (!p) throw GameParseError("undeclared player '" + name + "'", line);
    return *p;
  };
  auto state = [&](const std::string& name, std::size_t line) {
    auto p = arena.state_index(name);
    if (!p) throw GameParseError("undeclared state '" + name + "'", line);
    return *p;
  };

  for (const auto& s : stmts) {
    if (s.keyword == "initial") {
      if (have_initial) throw GameParseError("initial state declared twice", s.line);
      auto ws = detail::words(s.body);
      if (ws.size() != 1) throw GameParseError("expected exactly one initial state", s.line);
      arena.initial = state(ws[0], s.line);
      have_initial = true;
    } else if (s.keyword == "actions") {
      std::size_t i = player(s.head, s.line);
      if (have_actions[i]) throw GameParseError("actions of '" + s.head + "' declared twice", s.line);
      declare_list({s.keyword, "", s.body, s.line}, arena.actions[i], "action");
      have_actions[i] = 1;
    } else if (s.keyword == "label") {
      std::size_t st = state(s.head, s.line);
      for (const auto& w : detail::words(s.body)) {
        auto a = arena.atoms.find(w);
        if (!a) throw GameParseError("undeclared atom '" + w + "'", s.line);
        arena.labels[st][*a] = true;
      }
    } else if (s.keyword != "players" && s.keyword != "states" && s.keyword != "atoms" && s.keyword != "tr" &&
               s.keyword != "weight" && s.keyword != "goal") {
      throw GameParseError("unknown statement '" + s.keyword + "'", s.line);
    }
  }
  if (!have_initial) throw GameParseError("missing 'initial' declaration", 0);
  for (std::size_t i = 0; i < arena.players.size(); ++i)
    if (!have_actions[i]) throw GameParseError("missing actions for player '" + arena.players[i] + "'", 0);

  std::size_t S = arena.num_states(), P = arena.num_profiles(), N = arena.num_players();
  const std::size_t unset = static_cast<std::size_t>(-1);
  arena.transitions.assign(S * P, unset);
  std::optional<Weights> weights;
  std::vector<std::vector<char>> weight_seen;
  std::optional<std::vector<Gr1Formula>> goals;
  std::vector<char> goal_seen;

  for (const auto& s : stmts) {
    if (s.keyword == "tr") {
      // s0 (a, x) -> s1
      const std::string& h = s.head;
      std::size_t open = h.find('('), close = h.find(')'), arrow = h.find("->");
      if (open == std::string::npos || close == std::string::npos || arrow == std::string::npos || !(open < close) ||
          !(close < arrow))
        throw GameParseError("expected 'tr STATE (ACTION, ...) -> STATE'", s.line);
      std::size_t from = state(detail::trim(h.substr(0, open)), s.line);
      std::size_t to = state(detail::trim(h.substr(arrow + 2)), s.line);
      std::vector<std::string> acts;
      std::string inner = h.substr(open + 1, close - open - 1);
      std::size_t pos = 0;
      while (true) {
        std::size_t comma = inner.find(',', pos);
        acts.push_back(detail::trim(inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (acts.size() != N)
        throw GameParseError("profile has " + std::to_string(acts.size()) + " actions, expected " + std::to_string(N),
                             s.line);
      std::vector<std::size_t> a(N);
      for (std::size_t i = 0; i < N; ++i) {
        auto k = arena.action_index(i, acts[i]);
        if (!k) throw GameParseError("undeclared action '" + acts[i] + "' of player '" + arena.players[i] + "'", s.line);
        a[i] = *k;
      }
      std::size_t idx = from * P + arena.encode(a);
      if (arena.transitions[idx] != unset)
        throw GameParseError("duplicate transition row for (" + arena.states[from] + ", " +
                                 arena.profile_name(arena.encode(a)) + ")",
                             s.line);
      arena.transitions[idx] = to;
    } else if (s.keyword == "weight") {
      // p1 s0 = 2
      std::size_t eq = s.head.find('=');
      if (eq == std::string::npos) throw GameParseError("expected 'weight PLAYER STATE = INT'", s.line);
      auto ws = detail::words(s.head.substr(0, eq));
      auto vs = detail::words(s.head.substr(eq + 1));
      if (ws.size() != 2 || vs.size() != 1) throw GameParseError("expected 'weight PLAYER STATE = INT'", s.line);
      if (goals) throw GameParseError("mixed goal kinds: weight rows and GR(1) goals in one game", s.line);
      std::size_t i = player(ws[0], s.line), st = state(ws[1], s.line);
      if (!weights) {
        weights = Weights(N, std::vector<std::int64_t>(S, 0));
        weight_seen.assign(N, std::vector<char>(S, 0));
      }
      if (weight_seen[i][st]) throw GameParseError("duplicate weight for (" + ws[0] + ", " + ws[1] + ")", s.line);
      weight_seen[i][st] = 1;
      (*weights)[i][st] = detail::parse_int(vs[0], s.line);
    } else if (s.keyword == "goal") {
      if (weights) throw GameParseError("mixed goal kinds: weight rows and GR(1) goals in one game", s.line);
      std::size_t i = player(s.head, s.line);
      if (!goals) {
        goals = std::vector<Gr1Formula>(N);
        goal_seen.assign(N, 0);
      }
      if (goal_seen[i]) throw GameParseError("duplicate goal for '" + s.head + "'", s.line);
      goal_seen[i] = 1;
      try {
        (*goals)[i] = parse_gr1(s.body, arena.atoms);
      } catch (const std::exception& e) {
        throw GameParseError("goal of '" + s.head + "': " + e.what(), s.line);
      }
    }
  }

  for (std::size_t st = 0; st < S; ++st)
    for (std::size_t p = 0; p < P; ++p)
      if (arena.transitions[st * P + p] == unset)
        throw GameParseError("missing transition row for (" + arena.states[st] + ", " + arena.profile_name(p) + ")", 0);

  Game game;
  game.arena = std::move(arena);
  if (goals) {
    for (std::size_t i = 0; i < N; ++i)
      if (!goal_seen[i]) throw GameParseError("missing goal for player '" + game.arena.players[i] + "'", 0);
    game.goals = std::move(*goals);
  } else {
    game.goals = weights ? std::move(*weights) : Weights(N, std::vector<std::int64_t>(S, 0));
  }
  game.validate();
  return game;
}

inline Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

/// Inverse of parse_game, up to whitespace and comments.
inline std::string write_game(const Game& game) {
  const Arena& a = game.arena;
  std::ostringstream out;
  auto list = [&](const std::vector<std::string>& v) {
    for (const auto& x : v) out << ' ' << x;
  };
  out << "players:";
  list(a.players);
  out << ";\nstates:";
  list(a.states);
  out << ";\ninitial: " << a.states[a.initial] << ";\natoms:";
  list(a.atoms.names());
  out << ";\n";
  for (std::size_t i = 0; i < a.num_players(); ++i) {
    out << "actions " << a.players[i] << ':';
    list(a.actions[i]);
    out << ";\n";
  }
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    std::vector<std::string> on;
    for (std::size_t k = 0; k < a.atoms.size(); ++k)
      if (a.labels[s][k]) on.push_back(a.atoms.name(k));
    if (on.empty()) continue;
    out << "label " << a.states[s] << ':';
    list(on);
    out << ";\n";
  }
  for (std::size_t s = 0; s < a.num_states(); ++s)
    for (std::size_t p = 0; p < a.num_profiles(); ++p)
      out << "tr " << a.states[s] << ' ' << a.profile_name(p) << " -> " << a.states[a.succ(s, p)] << ";\n";
  if (game.is_mp()) {
    for (std::size_t i = 0; i < a.num_players(); ++i)
      for (std::size_t s = 0; s < a.num_states(); ++s)
        out << "weight " << a.players[i] << ' ' << a.states[s] << " = " << game.weights()[i][s] << ";\n";
  } else {
    for (std::size_t i = 0; i < a.num_players(); ++i)
      out << "goal " << a.players[i] << ": " << to_string(game.gr1_goals()[i], a.atoms) << ";\n";
  }
  return out.str();
}

}  // namespace ratv::io
