#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ratv {

using AtomId = std::size_t;

/// Declared atomic propositions, in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(std::move(n));
  }

  AtomId add(std::string name) {
    if (auto it = index_.find(name); it != index_.end()) return it->second;
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }
  std::optional<AtomId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& name(AtomId a) const { return names_.at(a); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> index_;
};

/// Propositional formula over atoms; immutable, cheap to copy.
class BoolExpr {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  BoolExpr() : BoolExpr(top()) {}

  static BoolExpr top() { return make(Kind::True); }
  static BoolExpr bottom() { return make(Kind::False); }
  static BoolExpr atom(AtomId a) {
    BoolExpr e = make(Kind::Atom);
    std::const_pointer_cast<Node>(e.node_)->atom = a;
    return e;
  }
  static BoolExpr negation(BoolExpr a) { return make(Kind::Not, std::move(a)); }
  static BoolExpr conjunction(BoolExpr a, BoolExpr b) { return make(Kind::And, std::move(a), std::move(b)); }
  static BoolExpr disjunction(BoolExpr a, BoolExpr b) { return make(Kind::Or, std::move(a), std::move(b)); }

  Kind kind() const { return node_->kind; }
  AtomId atom_id() const { return node_->atom; }
  const BoolExpr& lhs() const { return *node_->lhs; }
  const BoolExpr& rhs() const { return *node_->rhs; }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::True:
      case Kind::False: return true;
      case Kind::Atom: return a.atom_id() == b.atom_id();
      case Kind::Not: return a.lhs() == b.lhs();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

 private:
  struct Node {
    Kind kind = Kind::True;
    AtomId atom = 0;
    std::shared_ptr<const BoolExpr> lhs, rhs;
  };
  static BoolExpr make(Kind k) {
    BoolExpr e(nullptr);
    auto n = std::make_shared<Node>();
    n->kind = k;
    e.node_ = std::move(n);
    return e;
  }
  static BoolExpr make(Kind k, BoolExpr a) {
    BoolExpr e = make(k);
    std::const_pointer_cast<Node>(e.node_)->lhs = std::make_shared<const BoolExpr>(std::move(a));
    return e;
  }
  static BoolExpr make(Kind k, BoolExpr a, BoolExpr b) {
    BoolExpr e = make(k, std::move(a));
    std::const_pointer_cast<Node>(e.node_)->rhs = std::make_shared<const BoolExpr>(std::move(b));
    return e;
  }
  explicit BoolExpr(std::nullptr_t) {}

  std::shared_ptr<const Node> node_;
};

inline bool eval_bool(const BoolExpr& e, const std::vector<bool>& labels) {
  switch (e.kind()) {
    case BoolExpr::Kind::True: return true;
    case BoolExpr::Kind::False: return false;
    case BoolExpr::Kind::Atom: return e.atom_id() < labels.size() && labels[e.atom_id()];
    case BoolExpr::Kind::Not: return !eval_bool(e.lhs(), labels);
    case BoolExpr::Kind::And: return eval_bool(e.lhs(), labels) && eval_bool(e.rhs(), labels);
    case BoolExpr::Kind::Or: return eval_bool(e.lhs(), labels) || eval_bool(e.rhs(), labels);
  }
  return false;
}

/// LTL formula tree; F, G, R and -> are kept as nodes for readable printing.
class LtlFormula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Next, Until, Release, Finally, Globally };

  LtlFormula() : LtlFormula(top()) {}

  static LtlFormula top() { return make(Kind::True); }
  static LtlFormula bottom() { return make(Kind::False); }
  static LtlFormula atom(AtomId a) {
    LtlFormula f = make(Kind::Atom);
    std::const_pointer_cast<Node>(f.node_)->atom = a;
    return f;
  }
  static LtlFormula unary(Kind k, LtlFormula a) { return make(k, std::move(a)); }
  static LtlFormula binary(Kind k, LtlFormula a, LtlFormula b) { return make(k, std::move(a), std::move(b)); }

  static LtlFormula negation(LtlFormula a) { return unary(Kind::Not, std::move(a)); }
  static LtlFormula conjunction(LtlFormula a, LtlFormula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static LtlFormula disjunction(LtlFormula a, LtlFormula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static LtlFormula implication(LtlFormula a, LtlFormula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static LtlFormula next(LtlFormula a) { return unary(Kind::Next, std::move(a)); }
  static LtlFormula until(LtlFormula a, LtlFormula b) { return binary(Kind::Until, std::move(a), std::move(b)); }
  static LtlFormula release(LtlFormula a, LtlFormula b) { return binary(Kind::Release, std::move(a), std::move(b)); }
  static LtlFormula eventually(LtlFormula a) { return unary(Kind::Finally, std::move(a)); }
  static LtlFormula always(LtlFormula a) { return unary(Kind::Globally, std::move(a)); }

  Kind kind() const { return node_->kind; }
  AtomId atom_id() const { return node_->atom; }
  const LtlFormula& lhs() const { return *node_->lhs; }
  const LtlFormula& rhs() const { return *node_->rhs; }
  bool is_unary() const {
    return kind() == Kind::Not || kind() == Kind::Next || kind() == Kind::Finally || kind() == Kind::Globally;
  }
  bool is_binary() const { return node_->rhs != nullptr; }

  friend bool operator==(const LtlFormula& a, const LtlFormula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == Kind::True || a.kind() == Kind::False) return true;
    if (a.kind() == Kind::Atom) return a.atom_id() == b.atom_id();
    if (a.is_unary()) return a.lhs() == b.lhs();
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }

 private:
  struct Node {
    Kind kind = Kind::True;
    AtomId atom = 0;
    std::shared_ptr<const LtlFormula> lhs, rhs;
  };
  static LtlFormula make(Kind k) {
    LtlFormula f(nullptr);
    auto n = std::make_shared<Node>();
    n->kind = k;
    f.node_ = std::move(n);
    return f;
  }
  static LtlFormula make(Kind k, LtlFormula a) {
    LtlFormula f = make(k);
    std::const_pointer_cast<Node>(f.node_)->lhs = std::make_shared<const LtlFormula>(std::move(a));
    return f;
  }
  static LtlFormula make(Kind k, LtlFormula a, LtlFormula b) {
    LtlFormula f = make(k, std::move(a));
    std::const_pointer_cast<Node>(f.node_)->rhs = std::make_shared<const LtlFormula>(std::move(b));
    return f;
  }
  explicit LtlFormula(std::nullptr_t) {}

  std::shared_ptr<const Node> node_;
};

/// (GF psi_1 & ... & GF psi_m) -> (GF theta_1 & ... & GF theta_n); empty lists read as true.
struct Gr1Formula {
  std::vector<BoolExpr> antecedents;
  std::vector<BoolExpr> consequents;

  friend bool operator==(const Gr1Formula&, const Gr1Formula&) = default;
};

class FormulaError : public std::runtime_error {
 public:
  FormulaError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Raised when a formula parses as LTL but is not of GR(1) shape.
class Gr1ShapeError : public std::runtime_error {
 public:
  explicit Gr1ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string print_bool(const BoolExpr& e, const Alphabet& ab) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return ab.name(e.atom_id());
    case K::Not: {
      const auto& a = e.lhs();
      bool simple = a.kind() == K::Atom || a.kind() == K::True || a.kind() == K::False || a.kind() == K::Not;
      return "!" + (simple ? print_bool(a, ab) : "(" + print_bool(a, ab) + ")");
    }
    case K::And: return "(" + print_bool(e.lhs(), ab) + " & " + print_bool(e.rhs(), ab) + ")";
    case K::Or: return "(" + print_bool(e.lhs(), ab) + " | " + print_bool(e.rhs(), ab) + ")";
  }
  return {};
}

inline std::string print_ltl(const LtlFormula& f, const Alphabet& ab) {
  using K = LtlFormula::Kind;
  auto operand = [&](const LtlFormula& a) {
    bool simple = a.kind() == K::Atom || a.kind() == K::True || a.kind() == K::False || a.is_unary();
    return simple ? print_ltl(a, ab) : "(" + print_ltl(a, ab) + ")";
  };
  auto bin = [&](const char* op) { return "(" + print_ltl(f.lhs(), ab) + " " + op + " " + print_ltl(f.rhs(), ab) + ")"; };
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return ab.name(f.atom_id());
    case K::Not: return "!" + operand(f.lhs());
    case K::Next: return "X " + operand(f.lhs());
    case K::Finally: return "F " + operand(f.lhs());
    case K::Globally: return "G " + operand(f.lhs());
    case K::And: return bin("&");
    case K::Or: return bin("|");
    case K::Implies: return bin("->");
    case K::Until: return bin("U");
    case K::Release: return bin("R");
  }
  return {};
}

}  // namespace detail

inline std::string to_string(const BoolExpr& e, const Alphabet& ab) { return detail::print_bool(e, ab); }
inline std::string to_string(const LtlFormula& f, const Alphabet& ab) { return detail::print_ltl(f, ab); }

// ---------------------------------------------------------------------------
// Conversions

inline LtlFormula bool_to_ltl(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True: return LtlFormula::top();
    case K::False: return LtlFormula::bottom();
    case K::Atom: return LtlFormula::atom(e.atom_id());
    case K::Not: return LtlFormula::negation(bool_to_ltl(e.lhs()));
    case K::And: return LtlFormula::conjunction(bool_to_ltl(e.lhs()), bool_to_ltl(e.rhs()));
    case K::Or: return LtlFormula::disjunction(bool_to_ltl(e.lhs()), bool_to_ltl(e.rhs()));
  }
  return LtlFormula::top();
}

/// Propositional view of a temporal-operator-free formula.
inline std::optional<BoolExpr> ltl_to_bool(const LtlFormula& f) {
  using K = LtlFormula::Kind;
  switch (f.kind()) {
    case K::True: return BoolExpr::top();
    case K::False: return BoolExpr::bottom();
    case K::Atom: return BoolExpr::atom(f.atom_id());
    case K::Not: {
      auto a = ltl_to_bool(f.lhs());
      if (!a) return std::nullopt;
      return BoolExpr::negation(*a);
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      auto a = ltl_to_bool(f.lhs());
      auto b = ltl_to_bool(f.rhs());
      if (!a || !b) return std::nullopt;
      if (f.kind() == K::And) return BoolExpr::conjunction(*a, *b);
      if (f.kind() == K::Or) return BoolExpr::disjunction(*a, *b);
      return BoolExpr::disjunction(BoolExpr::negation(*a), *b);
    }
    default: return std::nullopt;
  }
}

inline LtlFormula gr1_to_ltl(const Gr1Formula& g) {
  auto conj = [](const std::vector<BoolExpr>& parts) {
    std::optional<LtlFormula> acc;
    for (const auto& b : parts) {
      LtlFormula gf = LtlFormula::always(LtlFormula::eventually(bool_to_ltl(b)));
      acc = acc ? LtlFormula::conjunction(*acc, gf) : gf;
    }
    return acc.value_or(LtlFormula::top());
  };
  if (g.antecedents.empty()) return conj(g.consequents);
  return LtlFormula::implication(conj(g.antecedents), conj(g.consequents));
}

namespace detail {

inline LtlFormula nnf(const LtlFormula& f, bool neg) {
  using K = LtlFormula::Kind;
  using L = LtlFormula;
  switch (f.kind()) {
    case K::True: return neg ? L::bottom() : L::top();
    case K::False: return neg ? L::top() : L::bottom();
    case K::Atom: return neg ? L::negation(f) : f;
    case K::Not: return nnf(f.lhs(), !neg);
    case K::And:
      return neg ? L::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : L::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Or:
      return neg ? L::conjunction(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : L::disjunction(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Implies:
      return neg ? L::conjunction(nnf(f.lhs(), false), nnf(f.rhs(), true))
                 : L::disjunction(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case K::Next: return L::next(nnf(f.lhs(), neg));
    case K::Until:
      return neg ? L::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : L::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Release:
      return neg ? L::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                 : L::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case K::Finally: return neg ? L::always(nnf(f.lhs(), true)) : L::eventually(nnf(f.lhs(), false));
    case K::Globally: return neg ? L::eventually(nnf(f.lhs(), true)) : L::always(nnf(f.lhs(), false));
  }
  return f;
}

}  // namespace detail

/// Negation normal form: negations only on atoms, no implications.
inline LtlFormula to_nnf(const LtlFormula& f) { return detail::nnf(f, false); }

/// The negation of f, pushed to negation normal form.
inline LtlFormula negate_to_ltl(const LtlFormula& f) { return detail::nnf(f, true); }

/// Recognises the GR(1) shape syntactically; throws Gr1ShapeError naming the offending subterm.
inline Gr1Formula ltl_as_gr1(const LtlFormula& f, const Alphabet& ab) {
  using K = LtlFormula::Kind;
  auto collect = [&](const LtlFormula& side, std::vector<BoolExpr>& out) {
    std::vector<const LtlFormula*> stack{&side};
    std::vector<const LtlFormula*> conjuncts;
    while (!stack.empty()) {
      const LtlFormula* g = stack.back();
      stack.pop_back();
      if (g->kind() == K::And) {
        stack.push_back(&g->rhs());
        stack.push_back(&g->lhs());
      } else {
        conjuncts.push_back(g);
      }
    }
    for (const LtlFormula* c : conjuncts) {
      if (c->kind() == K::True) continue;
      if (c->kind() == K::Globally && c->lhs().kind() == K::Finally) {
        if (auto b = ltl_to_bool(c->lhs().lhs())) {
          out.push_back(*b);
          continue;
        }
      }
      throw Gr1ShapeError("not a GR(1) formula: subterm '" + to_string(*c, ab) +
                          "' is not a conjunction of GF over a Boolean combination");
    }
  };
  Gr1Formula g;
  if (f.kind() == K::Implies) {
    collect(f.lhs(), g.antecedents);
    collect(f.rhs(), g.consequents);
  } else {
    collect(f, g.consequents);
  }
  return g;
}

inline std::string to_string(const Gr1Formula& g, const Alphabet& ab) { return to_string(gr1_to_ltl(g), ab); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class LtlParser {
 public:
  LtlParser(std::string_view text, const Alphabet& ab) : text_(text), ab_(ab) { lex(); }

  LtlFormula parse() {
    LtlFormula f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
    return f;
  }

 private:
  enum class Tok { Atom, True, False, LParen, RParen, Not, And, Or, Implies, Until, Release, Next, Finally, Globally, End };
  struct Token {
    Tok kind;
    std::string text;
    std::size_t line, column;
    AtomId atom = 0;
  };

  [[noreturn]] void fail(const std::string& what, const Token& at) const { throw FormulaError(what, at.line, at.column); }

  void lex() {
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Tok k, std::string t, std::size_t l, std::size_t c) { toks_.push_back({k, std::move(t), l, c}); };
    while (i < text_.size()) {
      char ch = text_[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        ++col;
        continue;
      }
      std::size_t l0 = line, c0 = col;
      auto two = [&](std::string_view s) { return text_.substr(i, s.size()) == s; };
      if (two("->")) { push(Tok::Implies, "->", l0, c0); i += 2; col += 2; continue; }
      if (two("&&")) { push(Tok::And, "&&", l0, c0); i += 2; col += 2; continue; }
      if (two("||")) { push(Tok::Or, "||", l0, c0); i += 2; col += 2; continue; }
      switch (ch) {
        case '(': push(Tok::LParen, "(", l0, c0); ++i; ++col; continue;
        case ')': push(Tok::RParen, ")", l0, c0); ++i; ++col; continue;
        case '!': push(Tok::Not, "!", l0, c0); ++i; ++col; continue;
        case '&': push(Tok::And, "&", l0, c0); ++i; ++col; continue;
        case '|': push(Tok::Or, "|", l0, c0); ++i; ++col; continue;
        default: break;
      }
      auto ident_start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
      auto ident_char = [&](char c) { return ident_start(c) || (c >= '0' && c <= '9'); };
      if (!ident_start(ch)) fail(std::string("unexpected character '") + ch + "'", Token{Tok::End, "", l0, c0});
      std::size_t j = i;
      while (j < text_.size() && ident_char(text_[j])) ++j;
      std::string word(text_.substr(i, j - i));
      i = j;
      col += word.size();
      if (word == "true" || word == "TRUE") { push(Tok::True, word, l0, c0); continue; }
      if (word == "false" || word == "FALSE") { push(Tok::False, word, l0, c0); continue; }
      if (word == "U") { push(Tok::Until, word, l0, c0); continue; }
      if (word == "R") { push(Tok::Release, word, l0, c0); continue; }
      if (auto a = ab_.find(word)) {
        push(Tok::Atom, word, l0, c0);
        toks_.back().atom = *a;
        continue;
      }
      bool all_ops = true;
      for (char c : word) all_ops = all_ops && (c == 'G' || c == 'F' || c == 'X');
      if (all_ops) {
        for (std::size_t k = 0; k < word.size(); ++k) {
          Tok t = word[k] == 'G' ? Tok::Globally : word[k] == 'F' ? Tok::Finally : Tok::Next;
          push(t, std::string(1, word[k]), l0, c0 + k);
        }
        continue;
      }
      fail("undeclared atom '" + word + "'", Token{Tok::Atom, word, l0, c0});
    }
    toks_.push_back({Tok::End, "end of input", line, col});
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  LtlFormula parse_implies() {
    LtlFormula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      take();
      return LtlFormula::implication(lhs, parse_implies());
    }
    return lhs;
  }
  LtlFormula parse_or() {
    LtlFormula lhs = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      lhs = LtlFormula::disjunction(lhs, parse_and());
    }
    return lhs;
  }
  LtlFormula parse_and() {
    LtlFormula lhs = parse_until();
    while (peek().kind == Tok::And) {
      take();
      lhs = LtlFormula::conjunction(lhs, parse_until());
    }
    return lhs;
  }
  LtlFormula parse_until() {
    LtlFormula lhs = parse_unary();
    if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
      Tok k = take().kind;
      LtlFormula rhs = parse_until();
      return k == Tok::Until ? LtlFormula::until(lhs, rhs) : LtlFormula::release(lhs, rhs);
    }
    return lhs;
  }
  LtlFormula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return LtlFormula::negation(parse_unary());
      case Tok::Next: take(); return LtlFormula::next(parse_unary());
      case Tok::Finally: take(); return LtlFormula::eventually(parse_unary());
      case Tok::Globally: take(); return LtlFormula::always(parse_unary());
      default: return parse_primary();
    }
  }
  LtlFormula parse_primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Atom: return LtlFormula::atom(t.atom);
      case Tok::True: return LtlFormula::top();
      case Tok::False: return LtlFormula::bottom();
      case Tok::LParen: {
        LtlFormula f = parse_implies();
        if (peek().kind != Tok::RParen) fail("expected ')' but found '" + peek().text + "'", peek());
        take();
        return f;
      }
      default: fail("expected a formula but found '" + t.text + "'", t);
    }
  }

  std::string_view text_;
  const Alphabet& ab_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Grammar: -> (right assoc) < | < & < U/R (right assoc) < !, X, F, G; "GF p" lexes as G F p.
inline LtlFormula parse_ltl(std::string_view text, const Alphabet& ab) { return detail::LtlParser(text, ab).parse(); }

inline Gr1Formula parse_gr1(std::string_view text, const Alphabet& ab) { return ltl_as_gr1(parse_ltl(text, ab), ab); }

}  // namespace ratv
