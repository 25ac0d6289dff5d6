// Acceptance suite: one PASS/FAIL line per criterion. Fixed seeds; exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ratv/graph.hpp"
#include "ratv/lp.hpp"
#include "ratv/oracle.hpp"
#include "support.hpp"

using namespace ratv;

namespace {

// Pinned sizes and tolerances.
constexpr int kGr1Games = 500;
constexpr int kMpGames = 500;
constexpr int kPunGames = 300;
constexpr int kLpGraphs = 200;
constexpr int kDualityGames = 100;
constexpr double kGr1TimeLimitSeconds = 300.0;
constexpr double kWitnessGapLimit = 0.05;
constexpr double kScalingSlopeLimit = 4.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void line(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool same_lasso(const Lasso& a, const Lasso& b) { return a.prefix == b.prefix && a.cycle == b.cycle; }

/// Witness checks shared by criteria 1, 2 and 4.
struct WitnessTally {
  int yes = 0, checked = 0, valid = 0, replayed = 0, gaps = 0;
  std::vector<std::string> problems;

  void record(const Game& game, const Specification& spec, const Verdict& v) {
    if (!v.answer) return;
    ++yes;
    if (v.witness_gap) {
      ++gaps;
      return;
    }
    ++checked;
    const Witness& w = *v.witness;
    auto err = check_witness(game, spec, w);
    if (!err) ++valid;
    else if (problems.size() < 5) problems.push_back(*err);
    Lasso out = canonicalize(play(game.arena, synthesize_profile(game, w)));
    if (same_lasso(out, w.lasso)) ++replayed;
    else if (problems.size() < 5) problems.push_back("synthesized profile does not reproduce the witness");
  }
};

WitnessTally gr1_tally, mp_tally;

void criterion_gr1() {
  std::mt19937_64 rng(20261016);
  auto t0 = Clock::now();
  int agree = 0, total = 0;
  std::string first_miss;
  for (int k = 0; k < kGr1Games; ++k) {
    Game g = test::random_gr1_game(rng, 3);
    const Arena& a = g.arena;
    LtlFormula p = LtlFormula::atom(0);
    std::vector<Specification> specs = {
        Specification::top(),
        Specification::from_gr1(Gr1Formula{{}, {BoolExpr::atom(0)}}),
        Specification::from_ltl(LtlFormula::always(LtlFormula::negation(p))),
    };
    for (const auto& spec : specs) {
      Verdict v = e_nash_gr1(g, spec);
      bool o = oracle::brute_e_nash_gr1(g, spec.as_ltl(), oracle::OracleConfig::for_game(g));
      ++total;
      if (v.answer == o) ++agree;
      else if (first_miss.empty()) first_miss = " first mismatch: game #" + std::to_string(k) + "\n" + io::write_game(g) +
                                                "spec " + to_string(spec.as_ltl(), a.atoms);
      gr1_tally.record(g, spec, v);
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << total << " instances agree over " << kGr1Games << " games, " << secs << " s (limit "
    << kGr1TimeLimitSeconds << " s)" << first_miss;
  line(1, "oracle equivalence, GR(1)", agree == total && secs < kGr1TimeLimitSeconds, d.str());
}

void criterion_mp() {
  std::mt19937_64 rng(4242);
  int agree = 0, total = 0, values_ok = 0, values_total = 0;
  std::string first_miss;
  for (int k = 0; k < kMpGames; ++k) {
    Game g = test::random_mp_game(rng, 3);
    for (std::size_t i = 0; i < g.arena.num_players(); ++i) {
      ++values_total;
      if (punish_values(g, i).value == oracle::brute_pun_mp(g, i)) ++values_ok;
    }
    Gr1Formula s = test::random_gr1(rng, g.arena, 1);
    Specification spec = Specification::from_gr1(s);
    Verdict v = e_nash_mp(g, spec);
    bool o = oracle::brute_e_nash_mp(g, s, oracle::OracleConfig::for_game(g));
    ++total;
    if (v.answer == o) ++agree;
    else if (first_miss.empty())
      first_miss = " first mismatch: game #" + std::to_string(k) + "\n" + io::write_game(g) + "spec " +
                   to_string(s, g.arena.atoms);
    mp_tally.record(g, spec, v);
  }
  std::ostringstream d;
  d << agree << "/" << total << " verdicts agree; punishment values " << values_ok << "/" << values_total
    << " exact" << first_miss;
  line(2, "oracle equivalence, mean-payoff", agree == total && values_ok == values_total, d.str());
}

/// Does j have a memoryless response over counter configurations beating `coalition` from s?
bool response_beats(const Game& g, const PunishResult& r, std::size_t s) {
  const Arena& a = g.arena;
  std::size_t j = r.player, C = r.counters.num_configs(), A = a.num_actions(j);
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < C; ++c) total *= A;
  std::vector<std::size_t> sj(C);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (auto& d : sj) {
      d = x % A;
      x /= A;
    }
    std::vector<std::size_t> seen(C, npos);
    std::vector<Step> steps;
    std::size_t c = r.counters.config(s, 0, 0);
    bool off = false;
    while (seen[c] == npos) {
      if (r.coalition[c] == npos) {
        off = true;  // coalition strategy undefined: it has left its winning configurations
        break;
      }
      seen[c] = steps.size();
      std::size_t st = r.counters.state_of(c);
      std::size_t pr = a.complete(j, r.coalition[c], sj[c]);
      steps.push_back({st, pr});
      c = r.counters.step(c, a.succ(st, pr));
    }
    if (off) return true;
    Lasso l;
    l.prefix.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(seen[c]));
    l.cycle.assign(steps.begin() + static_cast<std::ptrdiff_t>(seen[c]), steps.end());
    if (gr1_holds(l, a.labels, g.gr1_goals()[j])) return true;
  }
  return false;
}

void criterion_pun() {
  std::mt19937_64 rng(777);
  int agree = 0, total = 0, verified = 0, regions = 0;
  for (int k = 0; k < kPunGames; ++k) {
    Game g = test::random_gr1_game(rng, 3);
    for (std::size_t j = 0; j < g.arena.num_players(); ++j) {
      PunishResult r = punish_region(g, j);
      ++total;
      if (r.region == oracle::brute_pun_gr1(g, j)) ++agree;
      for (std::size_t s = 0; s < g.arena.num_states(); ++s) {
        if (!r.region[s]) continue;
        ++regions;
        if (!response_beats(g, r, s)) ++verified;
      }
    }
  }
  std::ostringstream d;
  d << agree << "/" << total << " regions match the oracle; coalition strategies hold against every response from "
    << verified << "/" << regions << " region states";
  line(3, "punishment-region correctness", agree == total && verified == regions, d.str());
}

void criterion_witness() {
  auto summary = [](const char* name, const WitnessTally& t) {
    std::ostringstream d;
    d << name << ": " << t.valid << "/" << t.checked << " re-validate, " << t.replayed << "/" << t.checked
      << " replay";
    return d.str();
  };
  double gap_rate = mp_tally.yes ? static_cast<double>(mp_tally.gaps) / mp_tally.yes : 0.0;
  bool ok = gr1_tally.valid == gr1_tally.checked && gr1_tally.replayed == gr1_tally.checked &&
            mp_tally.valid == mp_tally.checked && mp_tally.replayed == mp_tally.checked && gap_rate < kWitnessGapLimit;
  std::ostringstream d;
  d << summary("GR(1)", gr1_tally) << "; " << summary("mean-payoff", mp_tally) << "; witness gaps " << mp_tally.gaps
    << "/" << mp_tally.yes << " mean-payoff yes-instances (limit " << kWitnessGapLimit * 100 << "%)";
  for (const auto& p : gr1_tally.problems) d << "; " << p;
  for (const auto& p : mp_tally.problems) d << "; " << p;
  line(4, "witness self-validation", ok, d.str());
}

void criterion_lp() {
  std::mt19937_64 rng(31337);
  int agree = 0, total = 0, resub = 0, solved = 0;
  std::string first_miss;
  for (int k = 0; k < kLpGraphs; ++k) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::size_t dims = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    std::bernoulli_distribution edge_coin(0.35), set_coin(0.3), coin(0.5);
    std::uniform_int_distribution<int> wd(-3, 3);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    Adjacency adj(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (edge_coin(rng)) {
          edges.emplace_back(u, v);
          adj[u].push_back(v);
        }
    std::vector<std::vector<Rational>> weight(dims, std::vector<Rational>(n));
    for (auto& d : weight)
      for (auto& x : d) x = wd(rng);
    std::vector<std::vector<char>> theta;
    for (std::size_t t = std::uniform_int_distribution<std::size_t>(0, 2)(rng); t > 0; --t) {
      theta.emplace_back(n);
      for (auto& x : theta.back()) x = set_coin(rng);
    }
    std::vector<char> avoid(n, 0);
    bool psi_program = coin(rng);
    if (psi_program)
      for (auto& x : avoid) x = set_coin(rng);

    // per strongly connected component of the graph without avoided vertices
    std::vector<char> alive(n);
    for (std::size_t v = 0; v < n; ++v) alive[v] = !avoid[v];
    bool engine = false;
    for (const auto& comp : sccs(adj, alive)) {
      if (!is_cyclic(adj, comp)) continue;
      std::vector<std::size_t> idx(n, npos);
      for (std::size_t k2 = 0; k2 < comp.size(); ++k2) idx[comp[k2]] = k2;
      WeightedEdgeGraph wg;
      wg.num_vertices = comp.size();
      for (auto [u, v] : edges)
        if (idx[u] != npos && idx[v] != npos) wg.edges.emplace_back(idx[u], idx[v]);
      for (const auto& d : weight) {
        wg.weight.emplace_back(comp.size());
        for (std::size_t k2 = 0; k2 < comp.size(); ++k2) wg.weight.back()[k2] = d[comp[k2]];
      }
      for (const auto& th : theta) {
        wg.theta.emplace_back(comp.size());
        for (std::size_t k2 = 0; k2 < comp.size(); ++k2) wg.theta.back()[k2] = th[comp[k2]];
      }
      LinearProgram lp = build_lp_theta(wg);
      auto x = feasible(lp);
      if (x) {
        ++solved;
        if (satisfies(lp, *x)) ++resub;
        engine = true;
      }
    }
    bool brute = oracle::brute_cycle_combination(n, edges, weight, theta, avoid, 12);
    ++total;
    if (engine == brute) ++agree;
    else if (first_miss.empty()) first_miss = " first mismatch at graph #" + std::to_string(k);
  }
  std::ostringstream d;
  d << agree << "/" << total << " graphs agree; " << resub << "/" << solved << " solutions re-substitute exactly"
    << first_miss;
  line(5, "cycle-program correctness", agree == total && resub == solved, d.str());
}

void criterion_duality() {
  std::mt19937_64 rng(99);
  std::vector<Game> games = {test::fixture("g1.game"), test::fixture("g2.game"), test::fixture("g3.game")};
  for (int k = 0; k < kDualityGames; ++k) games.push_back(test::random_gr1_game(rng, 3));
  for (int k = 0; k < kDualityGames; ++k) games.push_back(test::random_mp_game(rng, 3));
  int dual_ok = 0, empty_ok = 0, oracle_ok = 0, oracle_total = 0, total = 0;
  for (const auto& g : games) {
    LtlFormula p = LtlFormula::atom(0);
    std::vector<LtlFormula> phis = {LtlFormula::top(), LtlFormula::always(LtlFormula::eventually(p)),
                                    LtlFormula::always(LtlFormula::negation(p))};
    for (const auto& phi : phis) {
      Specification spec = Specification::from_ltl(phi);
      bool a = a_nash(g, spec).answer;
      bool e = e_nash(g, Specification::from_ltl(negate_to_ltl(phi))).answer;
      ++total;
      if (a == !e) ++dual_ok;
      if (g.is_gr1()) {
        ++oracle_total;
        bool o = oracle::brute_e_nash_gr1(g, LtlFormula::negation(phi), oracle::OracleConfig::for_game(g));
        if (a == !o) ++oracle_ok;
      }
    }
    if (non_emptiness(g).answer == e_nash(g, Specification::from_gr1({})).answer) ++empty_ok;
  }
  std::ostringstream d;
  d << "a-nash = not e-nash(negation) on " << dual_ok << "/" << total << " (oracle-backed " << oracle_ok << "/"
    << oracle_total << "); non-emptiness = e-nash(true) on " << empty_ok << "/" << games.size() << " games";
  line(6, "duality and special cases", dual_ok == total && oracle_ok == oracle_total &&
                                            empty_ok == static_cast<int>(games.size()),
       d.str());
}

/// Smallest k with 2^k >= r, computed with floating point as an independent reference.
std::size_t ceil_log2(const Rational& r) {
  if (!(Rational(1) < r)) return 0;
  double x = r.get().get_d();
  auto k = static_cast<std::size_t>(std::ceil(std::log2(x)));
  // guard against rounding at exact powers of two
  while (k > 0 && Rational(static_cast<std::int64_t>(1) << (k - 1)) >= r) --k;
  while (Rational(static_cast<std::int64_t>(1) << k) < r) ++k;
  return k;
}

void criterion_welfare() {
  std::vector<std::string> names = {"g2.game", "g3.game", "g4.game"};
  int mono_ok = 0, mono_total = 0, approx_ok = 0, approx_total = 0, count_ok = 0;
  std::string first_miss;
  Specification top = Specification::top();
  for (const auto& name : names) {
    Game g = test::fixture(name);
    for (Measure m : {Measure::Utilitarian, Measure::Egalitarian}) {
      auto [a, b] = welfare_bounds(g, m);
      // threshold monotonicity on a grid of step 1/4 around [a, b]
      bool ge_prev = true, le_prev = false, ok = true;
      for (Rational t = a - 1; t <= b + 1; t += Rational(1, 4)) {
        bool ge = welfare_threshold(g, {m, Direction::AtLeast, t, top}).answer;
        bool le = welfare_threshold(g, {m, Direction::AtMost, t, top}).answer;
        if (ge && !ge_prev) ok = false;
        if (!le && le_prev) ok = false;
        ge_prev = ge;
        le_prev = le;
      }
      ++mono_total;
      if (ok) ++mono_ok;
      for (OptMode mode : {OptMode::Max, OptMode::Min}) {
        auto exact = oracle::brute_opt_welfare(g, {}, m == Measure::Utilitarian, mode == OptMode::Max);
        for (const Rational& eps : {Rational(1), Rational(1, 4), Rational(1, 16)}) {
          ++approx_total;
          auto tr = approx_opt_welfare(g, top, m, mode, eps);
          Rational diff = tr.value - *exact;
          if (diff.sign() < 0) diff = -diff;
          if (diff <= eps) ++approx_ok;
          else if (first_miss.empty())
            first_miss = " first miss: " + name + " exact " + exact->to_string() + " got " + tr.value.to_string() +
                         " eps " + eps.to_string();
          if (tr.calls == ceil_log2((b - a) / eps)) ++count_ok;
        }
      }
    }
  }
  std::ostringstream d;
  d << "monotone " << mono_ok << "/" << mono_total << "; within eps of exact optimum " << approx_ok << "/"
    << approx_total << "; iteration count exact " << count_ok << "/" << approx_total << first_miss;
  line(7, "welfare", mono_ok == mono_total && approx_ok == approx_total && count_ok == approx_total, d.str());
}

double median_time(const std::function<void()>& f, int reps) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    auto t0 = Clock::now();
    f();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

Game scaling_game(std::mt19937_64& rng, std::size_t states, std::size_t players) {
  Game g;
  g.arena = test::random_arena(rng, states, players, 2);
  // every player keeps both action choices
  for (auto& acts : g.arena.actions) acts = {"a0", "a1"};
  g.arena.transitions.resize(states * g.arena.num_profiles());
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  for (auto& t : g.arena.transitions) t = pick(rng);
  std::vector<Gr1Formula> goals;
  for (std::size_t i = 0; i < players; ++i)
    goals.push_back(Gr1Formula{{BoolExpr::atom(i % 2)}, {BoolExpr::atom((i + 1) % 2)}});
  g.goals = goals;
  return g;
}

void criterion_scaling() {
  std::mt19937_64 rng(5);
  std::vector<std::size_t> sizes = {8, 16, 32, 64};
  std::vector<double> xs, ys;
  std::ostringstream d;
  Specification spec = Specification::from_gr1(Gr1Formula{{}, {BoolExpr::atom(0)}});
  for (std::size_t n : sizes) {
    double sum = 0;
    const int instances = 5;
    for (int k = 0; k < instances; ++k) {
      Game g = scaling_game(rng, n, 2);
      sum += median_time([&] { e_nash_gr1(g, spec); }, 3);
    }
    double avg = sum / instances;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(avg));
    d << "|St|=" << n << ": " << avg * 1e3 << " ms; ";
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    num += (xs[k] - mx) * (ys[k] - my);
    den += (xs[k] - mx) * (xs[k] - mx);
  }
  double slope = num / den;
  d << "log-log slope " << slope << " (limit " << kScalingSlopeLimit << "); players at |St|=8:";
  for (std::size_t players : {2, 3, 4}) {
    Game g = scaling_game(rng, 8, players);
    d << " " << players << "p " << median_time([&] { e_nash_gr1(g, spec); }, 3) * 1e3 << " ms";
  }
  line(8, "scaling sanity", slope < kScalingSlopeLimit, d.str());
}

void criterion_bisection() {
  auto tr = bisect(0, 8, 1, OptMode::Max, [](const Rational&) { return true; });
  std::ostringstream d;
  d << "a=0, b=8, eps=1: " << tr.calls << " threshold calls, bisection_steps = " << bisection_steps(0, 8, 1);
  line(9, "bisection example", tr.calls == 3 && bisection_steps(0, 8, 1) == 3, d.str());
}

}  // namespace

int main() {
  criterion_gr1();
  criterion_mp();
  criterion_pun();
  criterion_witness();
  criterion_lp();
  criterion_duality();
  criterion_welfare();
  criterion_scaling();
  criterion_bisection();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
