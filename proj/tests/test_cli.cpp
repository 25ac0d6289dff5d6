#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace ratv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  std::string cmd = std::string(RATV_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string game(const char* name) { return "--game " + test::data_path(name); }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

json body(const std::string& s) { return json::parse(s.substr(s.find('\n') + 1)); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "ratv_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, FixtureVerdicts) {
  Outcome yes = cli("e-nash " + game("g1.game") + " --spec 'GF p'");
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(first_line(yes.out), "YES");
  json doc = body(yes.out);
  EXPECT_EQ(doc["verdict"], "yes");
  EXPECT_EQ(doc["lasso"]["cycle"][0]["state"], "sW");

  Outcome no = cli("e-nash " + game("g1.game") + " --spec 'G !p'");
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(first_line(no.out), "NO");

  EXPECT_EQ(cli("a-nash " + game("g1.game") + " --spec 'GF p'").code, 0);
  EXPECT_EQ(cli("non-emptiness " + game("g2.game")).code, 0);
  EXPECT_EQ(cli("e-nash " + game("g2.game") + " --spec 'GF at_s0'").code, 1);
  EXPECT_EQ(cli("oracle " + game("g1.game") + " --spec 'G !p'").code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("e-nash").code, 2);
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec 'p ->'").code, 2);
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec 'GF nope'").code, 2);
  EXPECT_EQ(cli("e-nash --game /nonexistent/file.game").code, 2);
  EXPECT_EQ(cli("welfare " + game("g1.game") + " --threshold 1").code, 2);
  EXPECT_EQ(cli("welfare " + game("g2.game") + " --threshold one").code, 2);
  EXPECT_EQ(cli("welfare-opt " + game("g2.game") + " --eps 0").code, 2);
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec-lang gr1 --spec 'G p'").code, 2);
}

TEST(Cli, SpecFromFileAndLanguages) {
  fs::path spec = scratch("spec.ltl");
  std::ofstream(spec) << "GF p\n";
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec @" + spec.string()).code, 0);
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec-lang ltl --spec 'F G p'").code, 0);
  EXPECT_EQ(cli("e-nash " + game("g1.game") + " --spec-lang gr1 --spec 'GF p'").code, 0);
}

TEST(Cli, JobsDoNotChangeOutput) {
  for (const char* args : {"e-nash --spec 'GF p' --synthesize", "a-nash --spec 'GF p'", "non-emptiness"}) {
    for (const char* g : {"g1.game", "g3.game", "g4.game"}) {
      std::string base = std::string(args).substr(0, std::string(args).find(' '));
      // the formula mentions p, which only g1 declares
      if (std::string(g) != "g1.game" && std::string(args).find("spec") != std::string::npos) continue;
      Outcome one = cli(std::string(args) + " " + game(g) + " --jobs 1");
      Outcome many = cli(std::string(args) + " " + game(g) + " --jobs 4");
      EXPECT_EQ(one.code, many.code) << base << " " << g;
      EXPECT_EQ(one.out, many.out) << base << " " << g;
    }
  }
}

TEST(Cli, WitnessFileReloads) {
  fs::path out = scratch("w.json");
  Outcome r = cli("e-nash " + game("g2.game") + " --spec 'GF p_any' --synthesize --witness " + out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  json doc = json::parse(in);
  EXPECT_EQ(doc, body(r.out));
  Game g = test::fixture("g2.game");
  Witness w = io::witness_from_json(g, doc);
  Specification spec = Specification::from_gr1(parse_gr1("GF p_any", g.arena.atoms));
  EXPECT_FALSE(check_witness(g, spec, w));
  StrategyProfile sp = io::transducers_from_json(g.arena, doc["transducers"]);
  EXPECT_EQ(canonicalize(play(g.arena, sp)), w.lasso);
}

TEST(Cli, Welfare) {
  Outcome ge2 = cli("welfare " + game("g2.game") + " --measure usw --dir ge --threshold 2");
  EXPECT_EQ(ge2.code, 0);
  EXPECT_EQ(body(ge2.out)["threshold"], "2/1");
  EXPECT_EQ(cli("welfare " + game("g2.game") + " --measure usw --dir ge --threshold 3").code, 1);
  EXPECT_EQ(cli("welfare " + game("g2.game") + " --measure esw --dir le --threshold 1/2").code, 0);

  Outcome opt = cli("welfare-opt " + game("g2.game") + " --measure usw --mode max --eps 1/4 --spec 'GF p_any'");
  ASSERT_EQ(opt.code, 0);
  Rational v = Rational::parse(first_line(opt.out));
  EXPECT_LE(v, Rational(2));
  EXPECT_GE(v, Rational(7, 4));
  EXPECT_EQ(body(opt.out)["threshold_calls"], 3);

  EXPECT_EQ(cli("welfare-opt " + game("g2.game") + " --eps 1 --spec 'GF at_s0'").code, 1);
}
