#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = lmu::cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Check) {
  EXPECT_EQ(run({"check", "\\x:bot. x"}).out, "bot -> bot\n");
  const Outcome bad = run({"check", "v v", "--context", "v:bot"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("type error"), std::string::npos);
  EXPECT_NE(run({"check", "--explain", "--context", "v:bot", "(\\x:bot. x) v"}).out.find("->e"), std::string::npos);
}

TEST(Cli, UsageAndParseErrors) {
  const Outcome none = run({});
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("usage: lmu"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const Outcome parse = run({"check", "(x"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Reduce) {
  EXPECT_EQ(run({"reduce", "(\\x. x) ((\\y. y) z)"}).out, "z\n");
  EXPECT_EQ(run({"reduce", "--trace", "(\\x. x) z"}).out, "1 root z\nz\n");
  EXPECT_EQ(run({"reduce", "--strategy", "head", "\\a. a ((\\x. x) b)"}).out, "\\a. a ((\\x. x) b)\n");
}

TEST(Cli, EtaAndSn) {
  EXPECT_EQ(run({"eta", "(\\x. x) ((\\y. y) z)"}).out, "2\n");
  const Outcome omega = run({"sn", "(\\x. x x) (\\x. x x)"});
  EXPECT_EQ(omega.code, 1);
  EXPECT_EQ(omega.out, "NotSN cycle_length=1\n");
  EXPECT_EQ(run({"sn", "--fuel", "20", "(\\x. x x z) (\\x. x x z)"}).code, 1);
  EXPECT_EQ(run({"eta", "--context", "v:bot", "v v"}).code, 1);
}

TEST(Cli, GraphHeadMeasureSubst) {
  EXPECT_EQ(run({"graph", "(\\x. x) z"}).out, "digraph reductions {\n  \"(\\\\x0. x0) z\" [root=true];\n  \"z\";\n  \"(\\\\x0. x0) z\" -> \"z\";\n}\n");
  EXPECT_EQ(run({"head", "(\\x. x b) c"}).out, "hred: c b\narg: c\narg: x b\n");
  EXPECT_EQ(run({"measure", "--context", "x1:bot -> bot, v:bot", "--subst", "x1 := \\u:bot. (\\t:bot. t) u", "x1 (x1 v)"}).out,
            "(1, 0, 5, 2)\n");
  EXPECT_EQ(run({"mu-subst", "--vars", "a", "--y", "k"}).out, "[a := \\u. a (u k)]\n");
}

TEST(Cli, Enumerate) {
  EXPECT_EQ(run({"enumerate", "--types", "--lgt-bound", "1"}).out, "bot\nbot -> bot\n");
  const Outcome r = run({"enumerate", "--type", "bot -> bot", "--max-size", "2"});
  EXPECT_EQ(r.out, "\\x0:bot. x0\n");
  EXPECT_EQ(run({"enumerate"}).code, 2);
}

TEST(Cli, Lemmas) {
  const Outcome r = run({"lemmas", "--suite", "thm8", "--max-size", "4", "--json", "-"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(j["suite"], "thm8");
  EXPECT_EQ(j["config"]["max_cxty"], 4);
  EXPECT_EQ(j["instances"], 268 + 1 + 12 + 72 + 383);
  EXPECT_EQ(j["passes"], j["instances"]);
  EXPECT_TRUE(j["failures"].empty());
  for (const char* k : {"max_eta", "max_graph_nodes", "wall_ms", "undecided"}) EXPECT_TRUE(j["stats"].contains(k)) << k;

  EXPECT_EQ(run({"lemmas", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"lemmas", "--suite", "l3", "--samples", "1000"}).code, 1);
}

TEST(Cli, Step) {
  const Outcome r = run({"step", "(\\x. x) ((\\y. y) z)"}, "2\n1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("  1 root (\\x. x) ((\\y. y) z)\n  2 arg (\\y. y) z\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("normal form after 2 steps"), std::string::npos);
  const Outcome bad = run({"step", "(\\x. x) z"}, "7\n");
  EXPECT_NE(bad.err.find("between 1 and 1"), std::string::npos);
}
