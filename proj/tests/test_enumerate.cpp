#include <gtest/gtest.h>

#include "lmu/lmu.hpp"
#include "oracles.hpp"

using namespace lmu;

TEST(Enumerate, Types) {
  const auto ts = enumerate_types(2);
  ASSERT_EQ(ts.size(), 4u);
  EXPECT_EQ(print_type(ts[0]), "bot");
  EXPECT_EQ(print_type(ts[1]), "bot -> bot");
  EXPECT_EQ(enumerate_types(3).size(), 9u);
}

// Every term the enumerator lists, and nothing else, per size and type,
// against generate-and-filter.
TEST(Enumerate, MatchesGenerateAndFilter) {
  for (const Context& g : {Context{}, parse_context("v:bot")}) {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto expected = oracle::typed_terms(n, g, 2);
      for (const Type& a : enumerate_types(2)) {
        std::multiset<std::string> got;
        for (const auto& inst : enumerate_typed_terms(g, a, n)) {
          if (cxty(inst.term) == n) got.insert(oracle::key(oracle::from_term(inst.term)));
        }
        const auto it = expected.find(print_type(a));
        const std::set<std::string> want = it == expected.end() ? std::set<std::string>{} : it->second;
        EXPECT_EQ(got, std::multiset<std::string>(want.begin(), want.end()))
            << "size " << n << " type " << print_type(a) << " context " << print_context(g);
      }
    }
  }
}

TEST(Enumerate, EveryInstanceChecks) {
  const Context g = parse_context("v:bot, f:bot -> bot");
  const Type a = parse_type("bot -> bot");
  for (const auto& inst : enumerate_typed_terms(g, a, 6)) EXPECT_EQ(infer(g, inst.term), a) << print_term(inst.term);
}

TEST(Enumerate, RandomTypedTermsCheck) {
  const Context g = parse_context("v:bot");
  for (const Type& a : enumerate_types(2)) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      if (auto inst = random_typed_term(g, a, 8, seed)) {
        EXPECT_EQ(infer(g, inst->term), a);
        EXPECT_LE(cxty(inst->term), 8u);
      }
    }
  }
}

// The whole corpus, all result types at once.
TEST(Enumerate, AnyTypeMatchesGenerateAndFilter) {
  for (const Context& g : {Context{}, parse_context("v:bot")}) {
    code::TypeTable types;
    TypedEnumerator en(types, g, enumerate_types(2));
    for (std::size_t n = 1; n <= 5; ++n) {
      std::map<std::string, std::multiset<std::string>> got;
      en.for_each_any(n, [&](const code::Code& c, code::TypeTable::Id t) {
        const Term m = decode(normalize_free(c, en.free_names()));
        EXPECT_EQ(infer(g, m), types.to_type(t));
        got[print_type(types.to_type(t))].insert(oracle::key(oracle::from_term(m)));
      });
      std::map<std::string, std::multiset<std::string>> want;
      for (const auto& [t, keys] : oracle::typed_terms(n, g, 2)) want[t].insert(keys.begin(), keys.end());
      EXPECT_EQ(got, want) << "size " << n << " context " << print_context(g);
    }
  }
}
