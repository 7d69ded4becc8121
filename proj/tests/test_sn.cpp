#include <gtest/gtest.h>

#include "lmu/lmu.hpp"
#include "oracles.hpp"

using namespace lmu;

TEST(Sn, OmegaLoopsOnItself) {
  const SnStatus s = explore_sn(parse_term("(\\x. x x) (\\x. x x)"), 10);
  ASSERT_TRUE(is_not_sn(s));
  EXPECT_EQ(std::get<NotSN>(s).cycle.size(), 1u);
  EXPECT_EQ(describe(s), "NotSN cycle_length=1");
}

TEST(Sn, GrowingTermRunsOutOfFuel) {
  const SnStatus s = explore_sn(parse_term("(\\x. x x z) (\\x. x x z)"), 50);
  ASSERT_TRUE(std::holds_alternative<Unknown>(s));
  EXPECT_EQ(std::get<Unknown>(s).nodes_visited, 50u);
}

TEST(Sn, EtaAgreesWithOracle) {
  for (const char* s : {"x", "(\\x. x) y", "(\\x. x x) ((\\y. y) z)", "(\\f. f (f a)) (\\u. (\\v. v) u)",
                        "(mu k:bot -> bot. k (\\u:bot. (\\w:bot. w) u)) ((\\t:bot. t) v)",
                        "(mu a. a (mu b. b a)) (\\x. x) ((\\y. y) z)"}) {
    const Term m = parse_term(s);
    const EtaValue e = eta(m);
    ASSERT_TRUE(std::holds_alternative<std::size_t>(e)) << s;
    EXPECT_EQ(std::get<std::size_t>(e), oracle::eta(oracle::from_term(m))) << s;
  }
}

TEST(Sn, DivergentArgumentCanBeErased) {
  EXPECT_TRUE(std::holds_alternative<NotSN>(eta(parse_term("(\\x. \\y. y) ((\\x. x x) (\\x. x x))"))));
}

// Both reducts of the root are the same alpha-class; labels use canonical names.
TEST(Sn, GraphAndDot) {
  const ReductionGraph g = reduction_graph(parse_term("(\\x. x) ((\\y. y) z)"));
  EXPECT_TRUE(g.complete);
  EXPECT_EQ(g.nodes.size(), 3u);
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(to_dot(g),
            "digraph reductions {\n"
            "  \"(\\\\x0. x0) ((\\\\x0. x0) z)\" [root=true];\n"
            "  \"(\\\\x0. x0) z\";\n"
            "  \"z\";\n"
            "  \"(\\\\x0. x0) ((\\\\x0. x0) z)\" -> \"(\\\\x0. x0) z\";\n"
            "  \"(\\\\x0. x0) z\" -> \"z\";\n"
            "}\n");
  EXPECT_FALSE(reduction_graph(parse_term("(\\x. x x z) (\\x. x x z)"), 5).complete);
}

TEST(Sn, EngineMemoIsSharedAcrossRoots) {
  SnEngine engine({1000, 100});
  const auto a = canonicalize(parse_term("(\\x. x) ((\\y. y) z)"));
  EXPECT_EQ(engine.explore(a.code).eta, 2u);
  const auto b = canonicalize(parse_term("(\\y. y) z"));
  const auto r = engine.explore(b.code);
  EXPECT_EQ(r.eta, 1u);
  EXPECT_EQ(r.visited, 0u);
}

TEST(Sn, ObserverSeesEveryInnerNode) {
  SnEngine engine({1000, 0});
  std::size_t calls = 0;
  engine.set_observer([&](const code::Code&, std::size_t eta, std::span<const code::Code> reducts) {
    ++calls;
    for (const auto& r : reducts) EXPECT_LT(*engine.known(r), eta);
  });
  engine.explore(canonicalize(parse_term("(\\x. x) ((\\y. y) z)")).code);
  EXPECT_EQ(calls, 2u);
}
