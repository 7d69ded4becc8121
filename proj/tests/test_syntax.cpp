#include <gtest/gtest.h>

#include "lmu/lmu.hpp"

using namespace lmu;

TEST(Syntax, ParsesAsciiAndUnicodeAlike) {
  EXPECT_EQ(parse_term("\\x:bot. mu y:bot -> bot. y x"), parse_term("λx:bot. μy:bot -> bot. y x"));
  EXPECT_EQ(parse_term("mu a. a"), Term::mu("a", Term::var("a")));
}

TEST(Syntax, ApplicationIsLeftAssociative) {
  const Term m = parse_term("f x y");
  ASSERT_TRUE(m.is_app());
  EXPECT_EQ(m.fun(), parse_term("(f x)"));
  EXPECT_EQ(m.arg(), Term::var("y"));
}

TEST(Syntax, BinderExtendsRight) {
  const Term m = parse_term("\\x. x y");
  ASSERT_TRUE(m.is_lam());
  EXPECT_TRUE(m.body().is_app());
}

TEST(Syntax, ArrowIsRightAssociative) {
  EXPECT_EQ(parse_type("bot -> bot -> bot"), Type::arrow(Type::bot(), negation(Type::bot())));
  EXPECT_EQ(print_type(parse_type("(bot -> bot) -> bot")), "(bot -> bot) -> bot");
}

TEST(Syntax, PrintsWithFewParentheses) {
  EXPECT_EQ(print_term(parse_term("((\\x. x) (y z))")), "(\\x. x) (y z)");
  EXPECT_EQ(print_term(parse_term("f (\\x:bot. x)")), "f \\x:bot. x");
  EXPECT_EQ(print_term(parse_term("f (\\x. x) y")), "f (\\x. x) y");
  EXPECT_EQ(print_term(parse_term("mu k:(bot -> bot). k")), "mu k:(bot -> bot). k");
}

TEST(Syntax, RoundTripsTrickyTerms) {
  for (const char* s : {"x", "\\x. \\y. x y", "(mu a:bot. a) ((\\x. x) y)", "f (g (\\x. x)) (mu k. k)",
                        "x' x'' x_1", "\\f:(bot -> bot) -> bot. f (\\u:bot. u)"}) {
    const Term m = parse_term(s);
    EXPECT_EQ(parse_term(print_term(m)), m) << s;
  }
}

TEST(Syntax, CommentsAreSkipped) { EXPECT_EQ(parse_term("-- omega\n(\\x. x x)"), parse_term("\\x. x x")); }

TEST(Syntax, ErrorsCarrySpans) {
  for (const char* s : {"", "\\x.", "(x", "x)", "\\. x", "x # y", "\\x:bot -> . x"}) {
    EXPECT_THROW(parse_term(s), ParseError) << s;
  }
  try {
    parse_term("x )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start_offset, 2u);
  }
}

TEST(Syntax, Contexts) {
  const Context g = parse_context("v:bot, f:bot -> bot");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.at("f"), negation(Type::bot()));
  EXPECT_TRUE(parse_context("").empty());
  EXPECT_EQ(parse_context(print_context(g)), g);
}

TEST(Terms, FreeVariablesAndSize) {
  const Term m = parse_term("\\x. x y (mu y. y z)");
  EXPECT_EQ(free_vars(m), (NameSet{"y", "z"}));
  EXPECT_EQ(cxty(m), 9u);
  EXPECT_EQ(free_occurrences(parse_term("x (\\x. x) x"), "x"), 2u);
}

TEST(Terms, SubstitutionAvoidsCapture) {
  const Term r = substitute(parse_term("\\y. x y"), "x", Term::var("y"));
  EXPECT_TRUE(alpha_eq(r, parse_term("\\w. y w")));
  EXPECT_FALSE(alpha_eq(r, parse_term("\\y. y y")));
}

TEST(Terms, ParallelSubstitutionIsSimultaneous) {
  const Term r = substitute_parallel(parse_term("x y"), {{"x", Term::var("y")}, {"y", Term::var("x")}});
  EXPECT_EQ(r, parse_term("y x"));
}

TEST(Terms, FreshNamesAddPrimes) {
  EXPECT_EQ(fresh_name("y", {"y", "y'"}), "y''");
  EXPECT_EQ(fresh_name("z'", {}), "z");
}

TEST(Canonical, AlphaClassesAndDecoding) {
  EXPECT_TRUE(alpha_eq(parse_term("\\a:bot. mu b:bot. b a"), parse_term("\\x:bot. mu y:bot. y x")));
  EXPECT_FALSE(alpha_eq(parse_term("\\a:bot. a"), parse_term("\\a. a")));
  const Term m = parse_term("\\x. y (\\x. x x) z");
  EXPECT_TRUE(alpha_eq(decode(canonicalize(m)), m));
  EXPECT_EQ(free_vars(decode(canonicalize(m))), free_vars(m));
  const Term avoided = decode(canonicalize(parse_term("\\q. q y")), {"x0"});
  EXPECT_FALSE(avoided.name() == "x0");
}
