// Command-line front end: e-nash, a-nash, non-emptiness, welfare and welfare-opt queries.
//
// Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 internal limit.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ratv/oracle.hpp"
#include "ratv/ratv.hpp"

namespace {

using ratv::io::json;

constexpr int kYes = 0, kNo = 1, kUsage = 2, kLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game;
  std::string spec;
  std::string spec_lang = "auto";
  std::string witness;
  bool synthesize = false;
  std::size_t jobs = 1;
  std::string measure = "usw";
  std::string dir = "ge";
  std::string threshold;
  std::string mode = "max";
  std::string eps;
};

void add_common(CLI::App* cmd, Options& o, bool with_spec = true) {
  cmd->add_option("--game", o.game, "game file")->required();
  if (with_spec) {
    cmd->add_option("--spec", o.spec, "specification formula, or @FILE");
    cmd->add_option("--spec-lang", o.spec_lang, "gr1, ltl or auto")->check(CLI::IsMember({"gr1", "ltl", "auto"}));
  }
  cmd->add_option("--witness", o.witness, "write the witness document to this file");
  cmd->add_flag("--synthesize", o.synthesize, "include synthesized transducers");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ratv::Specification load_spec(const Options& o, const ratv::Game& game) {
  if (o.spec.empty()) return ratv::Specification::top();
  std::string text = o.spec[0] == '@' ? read_file(o.spec.substr(1)) : o.spec;
  while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
  ratv::LtlFormula f = ratv::parse_ltl(text, game.arena.atoms);
  if (o.spec_lang == "ltl") return ratv::Specification::from_ltl(f);
  if (o.spec_lang == "gr1") return ratv::Specification::from_gr1(ratv::ltl_as_gr1(f, game.arena.atoms));
  try {
    return ratv::Specification::from_gr1(ratv::ltl_as_gr1(f, game.arena.atoms));
  } catch (const ratv::Gr1ShapeError&) {
    return ratv::Specification::from_ltl(f);
  }
}

ratv::Rational parse_rational(const std::string& text, const char* what) {
  try {
    return ratv::Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

void write_witness(const Options& o, const json& doc) {
  if (o.witness.empty()) return;
  std::ofstream out(o.witness);
  if (!out) throw UsageError("cannot write '" + o.witness + "'");
  out << doc.dump(2) << '\n';
}

int report(const Options& o, const ratv::Game& game, const std::string& query, const ratv::Verdict& v,
           json extra = json::object()) {
  std::optional<ratv::StrategyProfile> sp;
  if (o.synthesize && v.witness) sp = ratv::synthesize_profile(game, *v.witness);
  json doc = ratv::io::verdict_to_json(game, query, v, sp);
  for (auto& [k, val] : extra.items()) doc[k] = val;
  if (v.witness_gap && !o.witness.empty())
    throw LimitError("the cycle program is feasible but no single cycle witnesses it; no lasso to write");
  std::cout << (v.answer ? "YES" : "NO") << '\n' << doc.dump(2) << '\n';
  write_witness(o, doc);
  return v.answer ? kYes : kNo;
}

ratv::Measure measure_of(const std::string& m) {
  return m == "usw" ? ratv::Measure::Utilitarian : ratv::Measure::Egalitarian;
}

int run(int argc, char** argv) {
  CLI::App app{"Rational verification for concurrent games with GR(1) or mean-payoff goals"};
  app.require_subcommand(1);
  Options o;
  auto* e_nash = app.add_subcommand("e-nash", "does some Nash equilibrium satisfy the property?");
  auto* a_nash = app.add_subcommand("a-nash", "do all Nash equilibria satisfy the property?");
  auto* nonempty = app.add_subcommand("non-emptiness", "does the game have a Nash equilibrium?");
  auto* welfare = app.add_subcommand("welfare", "is there an equilibrium meeting a welfare threshold?");
  auto* welfare_opt = app.add_subcommand("welfare-opt", "approximate the best or worst equilibrium welfare");
  auto* oracle = app.add_subcommand("oracle", "brute-force e-nash for tiny games");
  oracle->group("");
  for (auto* c : {e_nash, a_nash, welfare, welfare_opt, oracle}) add_common(c, o);
  add_common(nonempty, o, false);
  for (auto* c : {welfare, welfare_opt})
    c->add_option("--measure", o.measure, "usw or esw")->check(CLI::IsMember({"usw", "esw"}));
  welfare->add_option("--dir", o.dir, "ge or le")->check(CLI::IsMember({"ge", "le"}));
  welfare->add_option("--threshold", o.threshold, "rational threshold")->required();
  welfare_opt->add_option("--mode", o.mode, "max or min")->check(CLI::IsMember({"max", "min"}));
  welfare_opt->add_option("--eps", o.eps, "positive rational precision")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  ratv::Game game;
  ratv::Specification spec;
  try {
    game = ratv::io::load_game(o.game);
    if (!nonempty->parsed()) spec = load_spec(o, game);
  } catch (const ratv::io::GameParseError& e) {
    throw UsageError(o.game + ": " + e.what());
  } catch (const ratv::FormulaError& e) {
    throw UsageError(std::string("specification: ") + e.what());
  } catch (const ratv::Gr1ShapeError& e) {
    throw UsageError(std::string("specification: ") + e.what());
  } catch (const ratv::ModelError& e) {
    throw UsageError(o.game + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  ratv::EngineOptions opt;
  opt.jobs = o.jobs;

  if (e_nash->parsed()) return report(o, game, "e-nash", ratv::e_nash(game, spec, opt));
  if (a_nash->parsed()) return report(o, game, "a-nash", ratv::a_nash(game, spec, opt));
  if (nonempty->parsed()) return report(o, game, "non-emptiness", ratv::non_emptiness(game, opt));
  if ((welfare->parsed() || welfare_opt->parsed()) && !game.is_mp())
    throw UsageError("welfare queries need a mean-payoff game");
  if (welfare->parsed()) {
    ratv::WelfareQuery q{measure_of(o.measure), o.dir == "ge" ? ratv::Direction::AtLeast : ratv::Direction::AtMost,
                         parse_rational(o.threshold, "--threshold"), spec};
    return report(o, game, "welfare", ratv::welfare_threshold(game, q, opt),
                  {{"measure", o.measure}, {"direction", o.dir}, {"threshold", q.threshold.to_string()}});
  }
  if (welfare_opt->parsed()) {
    ratv::Rational eps = parse_rational(o.eps, "--eps");
    if (eps.sign() <= 0) throw UsageError("--eps must be positive");
    ratv::OptMode mode = o.mode == "max" ? ratv::OptMode::Max : ratv::OptMode::Min;
    try {
      auto tr = ratv::approx_opt_welfare(game, spec, measure_of(o.measure), mode, eps, opt);
      json brackets = json::array();
      for (const auto& [lo, hi] : tr.brackets) brackets.push_back({lo.to_string(), hi.to_string()});
      json doc = {{"query", "welfare-opt"},
                  {"measure", o.measure},
                  {"mode", o.mode},
                  {"eps", eps.to_string()},
                  {"value", tr.value.to_string()},
                  {"threshold_calls", tr.calls},
                  {"brackets", brackets}};
      std::cout << tr.value.to_string() << '\n' << doc.dump(2) << '\n';
      write_witness(o, doc);
      return kYes;
    } catch (const ratv::NoEquilibrium&) {
      std::cout << "NO\n";
      return kNo;
    }
  }
  // oracle
  bool yes;
  if (game.is_mp()) {
    if (spec.kind != ratv::Specification::Kind::Gr1)
      throw UsageError("the oracle takes GR(1) specifications on mean-payoff games");
    yes = ratv::oracle::brute_e_nash_mp(game, spec.gr1, ratv::oracle::OracleConfig::for_game(game));
  } else {
    yes = ratv::oracle::brute_e_nash_gr1(game, spec.as_ltl(), ratv::oracle::OracleConfig::for_game(game));
  }
  std::cout << (yes ? "YES" : "NO") << '\n';
  return yes ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const ratv::oracle::SizeLimit& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::length_error& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kLimit;
  }
}
