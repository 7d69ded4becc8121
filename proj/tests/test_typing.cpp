#include <gtest/gtest.h>

#include "lmu/lmu.hpp"

using namespace lmu;

namespace {
Type ty(const char* s) { return parse_type(s); }
}  // namespace

TEST(Typing, Rules) {
  EXPECT_EQ(infer({}, parse_term("\\x:bot. x")), ty("bot -> bot"));
  EXPECT_EQ(infer(parse_context("v:bot"), parse_term("mu k:bot -> bot. k (\\u:bot. v)")), ty("bot -> bot"));
  EXPECT_EQ(infer(parse_context("f:bot -> bot, v:bot"), parse_term("f v")), ty("bot"));
  // double negation elimination
  EXPECT_EQ(infer({}, parse_term("\\h:(bot -> bot) -> bot. mu k:bot. h k")), ty("((bot -> bot) -> bot) -> bot"));
}

TEST(Typing, InnerBindersShadow) {
  EXPECT_EQ(infer(parse_context("x:bot -> bot"), parse_term("\\x:bot. x")), ty("bot -> bot"));
}

TEST(Typing, ErrorKindsAndPaths) {
  auto kind_of = [](const char* ctx, const char* term) {
    try {
      infer(parse_context(ctx), parse_term(term));
    } catch (const TypeError& e) {
      return e.kind();
    }
    ADD_FAILURE() << term << " type checked";
    return TypeErrorKind::NotAnArrow;
  };
  EXPECT_EQ(kind_of("", "\\x. x"), TypeErrorKind::UnannotatedBinder);
  EXPECT_EQ(kind_of("", "y"), TypeErrorKind::UnboundVariable);
  EXPECT_EQ(kind_of("v:bot", "v v"), TypeErrorKind::NotAnArrow);
  EXPECT_EQ(kind_of("f:bot -> bot", "f f"), TypeErrorKind::ArgumentMismatch);
  EXPECT_EQ(kind_of("", "mu k:bot. \\u:bot. u"), TypeErrorKind::MuBodyNotBot);

  try {
    infer(parse_context("v:bot"), parse_term("\\x:bot. v v"));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(print_path(e.at()), "lam");
  }
}

TEST(Typing, TryInferAndExplain) {
  EXPECT_FALSE(try_infer({}, parse_term("x")));
  const std::string d = explain(parse_context("v:bot"), parse_term("(\\x:bot. x) v"));
  EXPECT_EQ(d, "->e (\\x:bot. x) v : bot\n  ->i \\x:bot. x : bot -> bot\n    ax x : bot\n  ax v : bot\n");
}

TEST(Typing, SubjectReductionOnSmallGraphs) {
  const Context g = parse_context("v:bot");
  for (const char* s : {"(mu k:bot -> bot. k (\\u:bot. v)) v", "(\\f:bot -> bot. f v) (\\u:bot. u)",
                        "(mu k:(bot -> bot) -> bot. k (\\u:bot -> bot. u v)) (\\w:bot. w)"}) {
    const auto rep = check_subject_reduction(g, parse_term(s), 10);
    EXPECT_TRUE(rep.complete) << s;
    EXPECT_TRUE(rep.violations.empty()) << s;
    EXPECT_GT(rep.edges, 0u) << s;
  }
}
