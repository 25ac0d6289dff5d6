#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace ratv;

namespace {

Lasso lasso(std::vector<Step> prefix, std::vector<Step> cycle) { return Lasso{std::move(prefix), std::move(cycle)}; }

// One-player arena with a single state per weight, chained in a ring; used to feed mp_payoff.
Weights one_player(std::vector<std::int64_t> w) { return Weights{std::move(w)}; }

StrategyProfile constant_profile(const Arena& a, std::vector<std::size_t> acts) {
  StrategyProfile sp;
  for (std::size_t x : acts) sp.push_back(TransducerStrategy::constant(x, a.num_profiles()));
  return sp;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("+1/3").to_string(), "1/3");
  EXPECT_EQ(Rational(4).to_string(), "4/1");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(min(a, b), b);
  EXPECT_EQ(max(a, b), a);
  EXPECT_TRUE(Rational(6, 3).is_integer());
}

TEST(Arena, ProfileEncoding) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    Arena a = test::random_arena(rng, 2, 3, 3);
    for (std::size_t p = 0; p < a.num_profiles(); ++p) {
      EXPECT_EQ(a.encode(a.decode(p)), p);
      for (std::size_t j = 0; j < a.num_players(); ++j) {
        EXPECT_EQ(a.complete(j, a.partial_of(p, j), a.action_of(p, j)), p);
        for (std::size_t x = 0; x < a.num_actions(j); ++x) {
          std::size_t q = a.with_action(p, j, x);
          EXPECT_EQ(a.action_of(q, j), x);
          EXPECT_EQ(a.partial_of(q, j), a.partial_of(p, j));
        }
      }
    }
  }
}

TEST(Arena, PlayAlwaysCoordinate) {
  Game g = test::fixture("g1.game");
  const Arena& a = g.arena;
  Lasso l = play(a, constant_profile(a, {0, 0}));
  std::size_t aa = a.encode({0, 0});
  EXPECT_EQ(l, lasso({{*a.state_index("s0"), aa}}, {{*a.state_index("sW"), aa}}));
}

TEST(Arena, PlayMismatchEndsInSink) {
  Game g = test::fixture("g1.game");
  const Arena& a = g.arena;
  Lasso l = play(a, constant_profile(a, {0, 1}));
  ASSERT_EQ(l.cycle.size(), 1u);
  EXPECT_EQ(l.cycle[0], (Step{*a.state_index("sL"), a.encode({0, 1})}));
}

TEST(Arena, PlaySingleState) {
  std::mt19937_64 rng(1);
  Arena a = test::random_arena(rng, 1, 2, 2);
  Lasso l = play(a, constant_profile(a, {0, 0}));
  EXPECT_TRUE(l.prefix.empty());
  EXPECT_EQ(l.cycle.size(), 1u);
}

TEST(Arena, PlayIsDeterministicAndBounded) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    Arena a = test::random_arena(rng, 4, 2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, 1);
    std::vector<std::size_t> acts;
    for (std::size_t i = 0; i < a.num_players(); ++i) acts.push_back(pick(rng) % a.num_actions(i));
    auto sp = constant_profile(a, acts);
    Lasso l1 = play(a, sp), l2 = play(a, sp);
    EXPECT_EQ(l1, l2);
    EXPECT_LE(l1.size(), a.num_states());
    EXPECT_FALSE(lasso_error(a, l1, a.initial).has_value());
  }
}

TEST(Arena, MeanPayoffExamples) {
  EXPECT_EQ(mp_payoff(lasso({}, {{0, 0}}), one_player({3}), 0), Rational(3));
  EXPECT_EQ(mp_payoff(lasso({}, {{0, 0}, {1, 0}}), one_player({2, -2}), 0), Rational(0));
  EXPECT_EQ(mp_payoff(lasso({{0, 0}}, {{1, 0}, {2, 0}}), one_player({100, 1, 2}), 0), Rational(3, 2));
}

TEST(Arena, MeanPayoffRotationAndPrefixInvariance) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> w(-5, 5);
  std::uniform_int_distribution<std::size_t> len(1, 5);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = len(rng);
    Weights ws = one_player(std::vector<std::int64_t>(n + 2));
    for (auto& x : ws[0]) x = w(rng);
    Lasso l;
    for (std::size_t s = 0; s < n; ++s) l.cycle.push_back({s, 0});
    Rational base = mp_payoff(l, ws, 0);
    Lasso rot = l;
    std::rotate(rot.cycle.begin(), rot.cycle.begin() + 1, rot.cycle.end());
    EXPECT_EQ(mp_payoff(rot, ws, 0), base);
    l.prefix = {{n, 0}, {n + 1, 0}};
    EXPECT_EQ(mp_payoff(l, ws, 0), base);
  }
}

TEST(Arena, Gr1PayoffExamples) {
  Game g = test::fixture("g1.game");
  const Arena& a = g.arena;
  std::size_t sW = *a.state_index("sW"), sL = *a.state_index("sL");
  Gr1Formula gf_p = parse_gr1("GF p", a.atoms);
  EXPECT_EQ(gr1_payoff(lasso({}, {{sW, 0}}), a, gf_p), 1);
  EXPECT_EQ(gr1_payoff(lasso({}, {{sL, 0}}), a, gf_p), 0);

  Alphabet ab;
  ab.add("p");
  ab.add("q");
  Gr1Formula imp = parse_gr1("GF p -> GF q", ab);
  std::vector<std::vector<bool>> labels = {{false, false}, {false, true}};
  EXPECT_TRUE(gr1_holds(lasso({{1, 0}}, {{0, 0}}), labels, imp));
}

TEST(Arena, Gr1PayoffPrefixIndependentAndUnrollStable) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> len(1, 4);
  for (int k = 0; k < 200; ++k) {
    Arena a = test::random_arena(rng, 4, 1, 1);
    Gr1Formula g = test::random_gr1(rng, a, 2);
    std::uniform_int_distribution<std::size_t> st(0, a.num_states() - 1);
    Lasso l;
    for (std::size_t x = len(rng); x > 0; --x) l.cycle.push_back({st(rng), 0});
    bool base = gr1_holds(l, a.labels, g);
    Lasso twice = l;
    twice.cycle.insert(twice.cycle.end(), l.cycle.begin(), l.cycle.end());
    EXPECT_EQ(gr1_holds(twice, a.labels, g), base);
    Lasso rot = l;
    std::rotate(rot.cycle.begin(), rot.cycle.end() - 1, rot.cycle.end());
    rot.prefix = {{st(rng), 0}};
    EXPECT_EQ(gr1_holds(rot, a.labels, g), base);
  }
}

TEST(Arena, WinnersLosers) {
  Game g = test::fixture("g1.game");
  const Arena& a = g.arena;
  auto [w1, l1] = winners_losers(g, lasso({}, {{*a.state_index("sW"), 0}}));
  EXPECT_EQ(w1, (PlayerSet{0, 1}));
  EXPECT_TRUE(l1.empty());
  auto [w2, l2] = winners_losers(g, lasso({}, {{*a.state_index("sL"), 0}}));
  EXPECT_TRUE(w2.empty());
  EXPECT_EQ(l2, (PlayerSet{0, 1}));

  g.goals = std::vector<Gr1Formula>(2);
  auto [w3, l3] = winners_losers(g, lasso({}, {{*a.state_index("sL"), 0}}));
  EXPECT_EQ(w3.size(), 2u);
  EXPECT_TRUE(l3.empty());
}

TEST(Arena, WinnersLosersRejectsMeanPayoff) {
  Game g = test::fixture("g2.game");
  EXPECT_THROW(winners_losers(g, lasso({}, {{0, 0}})), ModelError);
}

TEST(Arena, CanonicalizeRotatesCycle) {
  Lasso l = lasso({{0, 0}}, {{2, 1}, {1, 0}, {3, 0}});
  Lasso c = canonicalize(l);
  EXPECT_EQ(c.cycle.front(), (Step{1, 0}));
  EXPECT_EQ(c.cycle.size(), 3u);
  EXPECT_EQ(canonicalize(c), c);
}

TEST(Arena, LassoValidation) {
  Game g = test::fixture("g1.game");
  const Arena& a = g.arena;
  std::size_t s0 = 0, sW = *a.state_index("sW"), aa = a.encode({0, 0}), ab = a.encode({0, 1});
  EXPECT_FALSE(lasso_error(a, lasso({{s0, aa}}, {{sW, aa}}), s0));
  EXPECT_TRUE(lasso_error(a, lasso({{s0, ab}}, {{sW, aa}}), s0));
  EXPECT_TRUE(lasso_error(a, lasso({}, {{sW, aa}}), s0));
  EXPECT_TRUE(lasso_error(a, lasso({{s0, aa}}, {}), s0));
}
