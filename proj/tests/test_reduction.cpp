#include <gtest/gtest.h>

#include "lmu/lmu.hpp"
#include "oracles.hpp"

using namespace lmu;

TEST(Reduction, Beta) {
  EXPECT_EQ(contract_redex(parse_term("(\\x. f x x) a")), parse_term("f a a"));
  EXPECT_THROW(contract_redex(parse_term("f a")), NotARedex);
}

TEST(Reduction, MuRuleShape) {
  const Term r = contract_redex(parse_term("(mu x:bot -> bot. x (\\u:bot. u)) a"));
  EXPECT_EQ(r, parse_term("mu y:bot. (\\z:(bot -> bot). y (z a)) (\\u:bot. u)"));
}

TEST(Reduction, MuRuleFreshNames) {
  // y and z already free: the new binders must avoid them.
  const Term r = contract_redex(parse_term("(mu x. x y) z"));
  ASSERT_TRUE(r.is_mu());
  EXPECT_NE(r.name(), "y");
  EXPECT_NE(r.name(), "z");
  EXPECT_TRUE(alpha_eq(r, parse_term("mu c. (\\d. c (d z)) y")));
  EXPECT_EQ(free_vars(r), (NameSet{"y", "z"}));
}

TEST(Reduction, MuRuleWithoutOccurrences) {
  EXPECT_TRUE(contract_redex(parse_term("(mu x:bot. v) w")) == parse_term("mu y. v"));
}

TEST(Reduction, AgreesWithOracleOnReducts) {
  for (const char* s : {"(\\x. x x) (\\y. y)", "(mu a. a (mu b. b a)) (\\x. x) ((\\y. y) z)",
                        "\\q. (mu k:bot -> bot. k ((\\u:bot. u) q)) q", "(\\x. \\y. x) y ((mu k. k) w)"}) {
    const Term m = parse_term(s);
    std::set<std::string> mine;
    for (const auto& r : one_step_reducts(m)) mine.insert(oracle::key(oracle::from_term(decode(r))));
    EXPECT_EQ(mine, oracle::reduct_keys(oracle::from_term(m))) << s;
  }
}

TEST(Reduction, PositionsAreLeftmostOutermostFirst) {
  const Term m = parse_term("(\\x. (\\y. y) x) ((\\z. z) w)");
  const auto ps = redex_positions(m);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_TRUE(ps[0].empty());
  EXPECT_EQ(print_path(ps[1]), "fun.lam");
  EXPECT_EQ(print_path(ps[2]), "arg");
  EXPECT_EQ(reduce_at(m, ps[2]), parse_term("(\\x. (\\y. y) x) w"));
  EXPECT_THROW(reduce_at(m, RedexPosition{PathStep::AppFun}), InvalidPosition);
}

TEST(Reduction, Strategies) {
  const Term m = parse_term("(\\x. x) ((\\y. y) z)");
  const Trace lo = reduce_with_strategy(m, Strategy::LeftmostOutermost, 10);
  EXPECT_EQ(lo.last(), Term::var("z"));
  EXPECT_EQ(lo.steps.size(), 2u);
  EXPECT_EQ(format_trace(lo), "1 root (\\y. y) z\n2 root z\n");

  const Trace head = reduce_with_strategy(parse_term("\\a. a ((\\x. x) b)"), Strategy::Head, 10);
  EXPECT_TRUE(head.steps.empty());

  const Trace omega = reduce_with_strategy(parse_term("(\\x. x x) (\\x. x x)"), Strategy::Random, 5, 7);
  EXPECT_TRUE(omega.truncated);
  EXPECT_EQ(omega.steps.size(), 5u);
}

TEST(Reduction, HeadFormHredAndArg) {
  const Term m = parse_term("\\a. (\\x. x b) c d");
  const HeadForm h = head_form(m);
  EXPECT_EQ(h.prefix.size(), 1u);
  EXPECT_FALSE(h.head_normal());
  EXPECT_EQ(h.spine.size(), 1u);
  EXPECT_EQ(*hred(m), parse_term("\\a. c b d"));
  EXPECT_EQ(arg(m), (std::set<CanonicalTerm>{canonicalize(parse_term("x b")), canonicalize(parse_term("c")),
                                              canonicalize(parse_term("d"))}));

  const Term n = parse_term("\\a. a (b c) d");
  EXPECT_FALSE(hred(n));
  EXPECT_EQ(arg(n).size(), 2u);
  EXPECT_TRUE(arg(parse_term("x")).empty());
}

TEST(Reduction, CodeRouteMatchesNamedRoute) {
  for (const char* s : {"(mu a:bot -> bot. a (\\u:bot. u)) (mu b:bot. v)", "\\q. (\\x. x (x q)) (\\y. y)",
                        "(mu x. x x) y (mu x. x)"}) {
    const CanonicalTerm c = canonicalize(parse_term(s));
    std::set<code::Code> coded;
    for (const auto& r : SnEngine::reducts(c.code)) coded.insert(r);
    std::set<code::Code> named;
    for (const auto& r : one_step_reducts(decode(c))) named.insert(relabel_free(r, c.free_names));
    EXPECT_EQ(coded, named) << s;
  }
}
