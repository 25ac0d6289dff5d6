#include <gtest/gtest.h>

#include <random>

#include "ratv/oracle.hpp"
#include "support.hpp"

using namespace ratv;
using K = LtlFormula::Kind;

namespace {

Alphabet pqr() { return Alphabet({"p", "q", "r"}); }

LtlFormula random_ltl(std::mt19937_64& rng, std::size_t atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
  switch (pick(rng)) {
    case 0: return LtlFormula::atom(std::uniform_int_distribution<std::size_t>(0, atoms - 1)(rng));
    case 1: return LtlFormula::atom(0);
    case 2: return std::bernoulli_distribution(0.5)(rng) ? LtlFormula::top() : LtlFormula::bottom();
    case 3: return LtlFormula::negation(random_ltl(rng, atoms, depth - 1));
    case 4: return LtlFormula::conjunction(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 5: return LtlFormula::disjunction(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 6: return LtlFormula::implication(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 7: return LtlFormula::next(random_ltl(rng, atoms, depth - 1));
    case 8: return LtlFormula::until(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 9: return LtlFormula::release(random_ltl(rng, atoms, depth - 1), random_ltl(rng, atoms, depth - 1));
    case 10: return LtlFormula::eventually(random_ltl(rng, atoms, depth - 1));
    default: return LtlFormula::always(random_ltl(rng, atoms, depth - 1));
  }
}

// Lasso over a one-profile "arena" whose states are the positions themselves.
struct Word {
  Lasso lasso;
  std::vector<std::vector<bool>> labels;
};

Word random_word(std::mt19937_64& rng, std::size_t atoms, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::size_t pre = len(rng), cyc = std::max<std::size_t>(1, len(rng));
  Word w;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < pre + cyc; ++k) {
    w.labels.emplace_back(atoms);
    for (std::size_t a = 0; a < atoms; ++a) w.labels.back()[a] = coin(rng);
    (k < pre ? w.lasso.prefix : w.lasso.cycle).push_back({k, 0});
  }
  return w;
}

}  // namespace

TEST(Formula, ParseImplicationOfRecurrences) {
  Alphabet ab = pqr();
  LtlFormula f = parse_ltl("G F p -> G F q", ab);
  ASSERT_EQ(f.kind(), K::Implies);
  EXPECT_EQ(f.lhs().kind(), K::Globally);
  EXPECT_EQ(f.lhs().lhs().kind(), K::Finally);
  EXPECT_EQ(f.rhs().lhs().lhs(), LtlFormula::atom(1));
}

TEST(Formula, ParseUntilOverConjunction) {
  Alphabet ab = pqr();
  LtlFormula f = parse_ltl("p U (q & !r)", ab);
  ASSERT_EQ(f.kind(), K::Until);
  EXPECT_EQ(f.lhs(), LtlFormula::atom(0));
  EXPECT_EQ(f.rhs().kind(), K::And);
  EXPECT_EQ(f.rhs().rhs().kind(), K::Not);
}

TEST(Formula, DanglingImplicationIsSyntaxError) {
  Alphabet ab = pqr();
  EXPECT_THROW(parse_ltl("p ->", ab), FormulaError);
  EXPECT_THROW(parse_ltl("p & (q", ab), FormulaError);
  EXPECT_THROW(parse_ltl("zz", ab), FormulaError);
}

TEST(Formula, Gr1Shapes) {
  Alphabet ab = pqr();
  Gr1Formula g = parse_gr1("(GF p & GF q) -> (GF r)", ab);
  ASSERT_EQ(g.antecedents.size(), 2u);
  ASSERT_EQ(g.consequents.size(), 1u);
  EXPECT_EQ(to_string(g.antecedents[0], ab), "p");
  EXPECT_EQ(to_string(g.antecedents[1], ab), "q");
  EXPECT_EQ(to_string(g.consequents[0], ab), "r");

  Gr1Formula h = parse_gr1("GF (p | q)", ab);
  EXPECT_TRUE(h.antecedents.empty());
  ASSERT_EQ(h.consequents.size(), 1u);
  EXPECT_EQ(h.consequents[0].kind(), BoolExpr::Kind::Or);

  EXPECT_THROW(parse_gr1("p U q -> GF r", ab), Gr1ShapeError);
  EXPECT_THROW(parse_gr1("G p", ab), Gr1ShapeError);
}

TEST(Formula, EvalBool) {
  Alphabet ab({"p", "q"});
  auto e = [&](const char* s) { return *ltl_to_bool(parse_ltl(s, ab)); };
  EXPECT_TRUE(eval_bool(e("p & !q"), {true, false}));
  EXPECT_FALSE(eval_bool(BoolExpr::bottom(), {true, true}));
  EXPECT_FALSE(eval_bool(e("p | q"), {false, false}));
}

TEST(Formula, Gr1ToLtlAndNegation) {
  Alphabet ab({"p", "q"});
  EXPECT_EQ(gr1_to_ltl(Gr1Formula{}), LtlFormula::top());
  EXPECT_EQ(negate_to_ltl(parse_ltl("GF p", ab)), parse_ltl("FG !p", ab));
  Gr1Formula g{{BoolExpr::atom(0)}, {BoolExpr::atom(1)}};
  EXPECT_EQ(gr1_to_ltl(g), parse_ltl("(GF p) -> (GF q)", ab));
}

TEST(Formula, PrintParseRoundTrip) {
  std::mt19937_64 rng(17);
  Alphabet ab = pqr();
  for (int k = 0; k < 500; ++k) {
    LtlFormula f = random_ltl(rng, 3, 4);
    std::string text = to_string(f, ab);
    EXPECT_EQ(parse_ltl(text, ab), f) << text;
  }
}

TEST(Formula, LassoSatisfiesExamples) {
  Alphabet ab({"p"});
  std::vector<std::vector<bool>> labels = {{false}, {true}};
  Lasso all_p{{}, {{1, 0}}};
  EXPECT_TRUE(lasso_satisfies(parse_ltl("G p", ab), all_p, labels));
  Lasso then_p{{{0, 0}}, {{1, 0}}};
  EXPECT_TRUE(lasso_satisfies(parse_ltl("X p", ab), then_p, labels));
  Lasso never_p{{{1, 0}}, {{0, 0}}};
  EXPECT_FALSE(lasso_satisfies(parse_ltl("GF p", ab), never_p, labels));
}

TEST(Formula, ExcludedMiddleAndGr1Agreement) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 300; ++k) {
    Word w = random_word(rng, 2, 3);
    LtlFormula f = random_ltl(rng, 2, 3);
    EXPECT_NE(lasso_satisfies(f, w.lasso, w.labels), lasso_satisfies(negate_to_ltl(f), w.lasso, w.labels));

    Arena a;
    a.atoms = Alphabet({"p", "q"});
    Gr1Formula g = test::random_gr1(rng, a, 2);
    EXPECT_EQ(lasso_satisfies(gr1_to_ltl(g), w.lasso, w.labels), gr1_holds(w.lasso, w.labels, g));
  }
}

TEST(Formula, UnrollingInvariance) {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    Word w = random_word(rng, 2, 3);
    LtlFormula f = random_ltl(rng, 2, 3);
    bool base = lasso_satisfies(f, w.lasso, w.labels);
    for (int times : {2, 3}) {
      Lasso u = w.lasso;
      for (int t = 1; t < times; ++t) u.cycle.insert(u.cycle.end(), w.lasso.cycle.begin(), w.lasso.cycle.end());
      EXPECT_EQ(lasso_satisfies(f, u, w.labels), base);
    }
    EXPECT_EQ(oracle::ltl_holds_direct(f, w.lasso, w.labels), base);
  }
}
