#include <gtest/gtest.h>

#include <vector>

#include "engelkit/words.hpp"
#include "support.hpp"

using namespace engelkit;

namespace {

// Letters as signed generator numbers (g+1 or -(g+1)), freely reduced with a stack.
using Naive = std::vector<int>;

Naive naive(const GroupWord& w) {
  Naive out;
  for (const auto& l : w.letters()) {
    const auto e = l.exp.to_int64();
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) out.push_back(e < 0 ? -(l.gen + 1) : l.gen + 1);
  }
  return out;
}

Naive reduce(const Naive& w) {
  Naive out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Naive inv(const Naive& w) {
  Naive out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Naive cat(Naive a, const Naive& b) {
  a.insert(a.end(), b.begin(), b.end());
  return reduce(a);
}

Naive naive_comm(const std::vector<Naive>& parts) {
  Naive acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = cat(cat(cat(inv(acc), inv(parts[i])), acc), parts[i]);
  return acc;
}

GroupWord gen(int g, int e = 1) { return GroupWord::generator(g, e); }

}  // namespace

TEST(Words, FreeReductionOnConstruction) {
  const GroupWord w({{0, 2}, {0, -2}, {1, 1}, {1, 0}, {1, 2}});
  ASSERT_EQ(w.syllables(), 1u);
  EXPECT_EQ(w.letters()[0], (Letter{1, 3}));
  EXPECT_TRUE(GroupWord({{0, 0}}).empty());
}

TEST(Words, MultiplyInvertConjugate) {
  const auto a = gen(0), b = gen(1);
  EXPECT_TRUE(multiply(a, invert(a)).empty());
  EXPECT_EQ(invert(multiply(a, b)), GroupWord({{1, -1}, {0, -1}}));
  EXPECT_EQ(conjugate(a, b), GroupWord({{1, -1}, {0, 1}, {1, 1}}));
  EXPECT_EQ(power(multiply(a, b), -2), GroupWord({{1, -1}, {0, -1}, {1, -1}, {0, -1}}));
}

TEST(Words, LeftNormedCommExamples) {
  const auto a = gen(0), b = gen(1);
  const std::vector<GroupWord> one{a};
  EXPECT_EQ(left_normed_comm(one), a);
  const std::vector<GroupWord> two{a, b};
  EXPECT_EQ(left_normed_comm(two), GroupWord({{0, -1}, {1, -1}, {0, 1}, {1, 1}}));
  const std::vector<GroupWord> three{a, b, b};
  const auto ab = commutator(a, b);
  EXPECT_EQ(left_normed_comm(three), multiply(multiply(invert(ab), gen(1, -1)), multiply(ab, b)));
  EXPECT_THROW(left_normed_comm(std::vector<GroupWord>{}), std::invalid_argument);
}

TEST(Words, LeftNormedCommMatchesNaiveOracle) {
  support::Rng rng(11);
  for (int k = 0; k < 400; ++k) {
    std::vector<GroupWord> parts;
    std::vector<Naive> nparts;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      parts.push_back(support::random_word(rng, 3, 3));
      nparts.push_back(naive(parts.back()));
    }
    ASSERT_EQ(naive(left_normed_comm(parts)), naive_comm(nparts));
  }
}

TEST(Words, ProductWithInverseIsEmpty) {
  support::Rng rng(3);
  for (int k = 0; k < 1000; ++k) {
    const auto u = support::random_word(rng, 4, 20);
    ASSERT_TRUE(multiply(u, invert(u)).empty());
    ASSERT_EQ(GroupWord(u.letters()), u);
  }
}

TEST(Words, ParseEngelRelator) {
  const auto p = parse_presentation("gens a, x\nidentical x\nrel [a,x,x,x,x]");
  ASSERT_EQ(p.generators.size(), 2u);
  EXPECT_EQ(p.identical, std::vector<int>{1});
  ASSERT_EQ(p.relators.size(), 1u);
  const std::vector<Naive> parts{{1}, {2}, {2}, {2}, {2}};
  const auto oracle = naive_comm(parts);
  EXPECT_EQ(naive(p.relators[0]), oracle);
  EXPECT_EQ(p.relators[0].length(), Integer(static_cast<long long>(oracle.size())));
  EXPECT_EQ(p.relators[0].length(), Integer(38));
}

TEST(Words, ParseSmallRelators) {
  auto p = parse_presentation("gens a\nrel a^0");
  ASSERT_EQ(p.relators.size(), 1u);
  EXPECT_TRUE(p.relators[0].empty());

  p = parse_presentation("gens a,b\nrel [b,a]");
  EXPECT_EQ(p.relators[0], GroupWord({{1, -1}, {0, -1}, {1, 1}, {0, 1}}));

  p = parse_presentation("gens a, b; rel a^b, (a*b)^-2");
  EXPECT_EQ(p.relators[0], conjugate(gen(0), gen(1)));
  EXPECT_EQ(p.relators[1], power(multiply(gen(0), gen(1)), -2));
}

TEST(Words, ParseErrors) {
  try {
    parse_presentation("gens a\nrel a*c");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_presentation("gens a\nrel [a"), ParseError);
  EXPECT_THROW(parse_presentation("gens a, x\nidentical x\nrel x^2"), ParseError);
  EXPECT_THROW(parse_presentation("frobnicate a"), ParseError);
}

TEST(Words, PrintParseRoundTrip) {
  for (const auto* name : {"H", "K", "N", "M", "G0", "L", "T8", "T9", "free2"}) {
    const auto p = support::load_presentation(name);
    EXPECT_EQ(parse_presentation(print_presentation(p)), p) << name;
  }
}

TEST(Words, Format) {
  const std::vector<std::string> names{"a", "b"};
  EXPECT_EQ(format_word(GroupWord{}, names), "1");
  EXPECT_EQ(format_word(GroupWord({{0, -1}, {1, 2}}), names), "a^-1 b^2");
  EXPECT_EQ(parse_word("[a,b]", names), commutator(gen(0), gen(1)));
  EXPECT_TRUE(parse_word_list("  ", names).empty());
}
