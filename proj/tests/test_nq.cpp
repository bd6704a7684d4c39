#include <gtest/gtest.h>

#include <set>

#include "engelkit/nq.hpp"
#include "support.hpp"

using namespace engelkit;

namespace {

std::vector<int> ranks(const NqResult& q) {
  std::vector<int> out;
  for (const auto& l : q.layers) out.push_back(l.rank);
  return out;
}

NqState state_of(const NqResult& q) { return {q.pcp, q.images, q.definitions, q.nilpotency_class}; }

}  // namespace

TEST(Nq, FreeRankTwoLayers) {
  const auto q = nilpotent_quotient(parse_presentation("gens a, b"), 5);
  EXPECT_EQ(q.nilpotency_class, 5);
  EXPECT_FALSE(q.stabilized);
  EXPECT_EQ(ranks(q), (std::vector<int>{2, 1, 2, 3, 6}));
  for (const auto& l : q.layers) EXPECT_TRUE(l.divisors.empty());
}

TEST(Nq, CyclicOfOrderFive) {
  const auto q = nilpotent_quotient(parse_presentation("gens a; rel a^5"), 3);
  EXPECT_EQ(q.nilpotency_class, 1);
  EXPECT_TRUE(q.stabilized);
  ASSERT_EQ(q.layers.size(), 1u);
  EXPECT_EQ(q.layers[0].rank, 0);
  EXPECT_EQ(q.layers[0].divisors, std::vector<Integer>{5});
}

TEST(Nq, TorsionLayers) {
  // D16: layers Z2 x Z2, Z2, Z2.
  const auto q = nilpotent_quotient(parse_presentation("gens a, b; rel a^8, b^2, (a*b)^2"), 8);
  EXPECT_TRUE(q.stabilized);
  EXPECT_EQ(q.nilpotency_class, 3);
  EXPECT_EQ(q.layers[0].divisors, (std::vector<Integer>{2, 2}));
  EXPECT_EQ(q.layers[1].divisors, std::vector<Integer>{2});
  EXPECT_EQ(q.layers[2].divisors, std::vector<Integer>{2});
}

TEST(Nq, ExtendStep) {
  const auto p = parse_presentation("gens a, b");
  const auto q1 = nilpotent_quotient(p, 1);
  const auto step = extend_step(state_of(q1), p);
  EXPECT_TRUE(step.grew);
  EXPECT_EQ(step.next.pcp.size(), 3u);
  EXPECT_EQ(step.next.pcp.weight(2), 2);

  const auto c2 = parse_presentation("gens a; rel a^2");
  const auto r = nilpotent_quotient(c2, 1);
  const auto s = extend_step(state_of(r), c2);
  EXPECT_FALSE(s.grew);
  EXPECT_EQ(s.next.pcp.size(), r.pcp.size());
}

TEST(Nq, IdempotentAtStabilization) {
  const auto p = support::load_presentation("M");
  const auto q = nilpotent_quotient(p, 12);
  ASSERT_TRUE(q.stabilized);
  const auto s = extend_step(state_of(q), p);
  EXPECT_FALSE(s.grew);
  EXPECT_EQ(s.next.images, q.images);
  EXPECT_EQ(s.next.nilpotency_class, q.nilpotency_class);
}

TEST(Nq, InstanceSet) {
  const auto q = nilpotent_quotient(parse_presentation("gens a, b"), 1);
  const auto inst = instance_set(q.pcp, 2);
  const std::set<ExponentVector> got(inst.begin(), inst.end());
  const std::set<ExponentVector> want{{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}};
  EXPECT_EQ(got, want);
  // Budget below every weight leaves only the inverses.
  EXPECT_EQ(instance_set(q.pcp, 0).size(), 2u);
}

TEST(Nq, InstantiateIdenticals) {
  const auto p = parse_presentation("gens a, b, x\nidentical x\nrel [a,x,x,x,x], b^3");
  const auto q = nilpotent_quotient(parse_presentation("gens a, b"), 1);
  const auto images = std::vector<ExponentVector>{q.images[0], q.images[1], {}};
  EXPECT_EQ(instantiate_identicals(p.relators[0], p, q.pcp, images, 2).size(), 5u);
  const auto plain = instantiate_identicals(p.relators[1], p, q.pcp, images, 2);
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(collect(q.pcp, plain[0]), (ExponentVector{0, 3}));
}

TEST(Nq, EnforceRelations) {
  const auto p = parse_presentation("gens a, b");
  const auto q = nilpotent_quotient(p, 1);
  const auto ext = build_extension(state_of(q), p);
  const std::size_t k = ext.tails.size();
  ASSERT_GT(k, 0u);
  const auto kept = enforce_relations(IntMatrix(0, k), ext);
  EXPECT_EQ(kept.pcp.size(), q.pcp.size() + k);
  const auto killed = enforce_relations(IntMatrix::identity(k), ext);
  EXPECT_EQ(killed.pcp.size(), q.pcp.size());
}

TEST(Nq, EpimorphismAndInvariants) {
  for (const auto* name : {"G0", "N", "M", "T9"}) {
    const auto p = support::load_presentation(name);
    const auto q = nilpotent_quotient(p, 6);
    for (const auto& r : p.relators) {
      if (p.mentions_identical(r)) continue;
      EXPECT_TRUE(is_identity(evaluate_word(q.pcp, r, q.images))) << name;
    }
    for (std::size_t g = 1; g < q.pcp.size(); ++g)
      EXPECT_LE(q.pcp.weight(static_cast<int>(g) - 1), q.pcp.weight(static_cast<int>(g))) << name;
    for (const auto& [key, tail] : q.pcp.conjugate_tails())
      for (const auto& l : tail)
        EXPECT_GE(q.pcp.weight(l.gen), q.pcp.weight(key.first) + q.pcp.weight(key.second)) << name;
    EXPECT_EQ(q.nilpotency_class, q.pcp.max_weight()) << name;
    EXPECT_TRUE(consistency_check(q.pcp).empty()) << name;
  }
}

TEST(Nq, Deterministic) {
  const auto p = support::load_presentation("L");
  const auto a = nilpotent_quotient(p, 6);
  const auto b = nilpotent_quotient(p, 6);
  EXPECT_EQ(a.images, b.images);
  EXPECT_EQ(a.definitions, b.definitions);
  EXPECT_EQ(a.layers, b.layers);
  EXPECT_EQ(a.pcp.conjugate_tails(), b.pcp.conjugate_tails());
}

TEST(Nq, LawFreeOneGenerator) {
  // With a single group generator every law of this shape holds already.
  const auto q = nilpotent_quotient(parse_presentation("gens a, x\nidentical x\nrel [a,x,x,x,x]"), 12);
  EXPECT_EQ(q.nilpotency_class, 1);
  EXPECT_TRUE(q.stabilized);
}

TEST(Nq, MagnusProfile) {
  const auto h = support::load_presentation("H");
  EXPECT_EQ(law_min_length(h.relators[0], h, 8), 5);
  EXPECT_EQ(law_constant_degree(h.relators[0], h, 8), 1);
  const auto n = support::load_presentation("N");
  EXPECT_EQ(law_constant_degree(n.relators[0], n, 8), 4);
}

TEST(Nq, SmallLeftEngelClasses) {
  // 2-Engel groups on two generators have class 2; with the variable on the left, a two-generator group
  // whose generators are left 2-Engel is class <= 2 as well.
  const auto q = nilpotent_quotient(parse_presentation("gens a, b, x, y\nidentical x, y\nrel [x,y,y]"), 8);
  EXPECT_TRUE(q.stabilized);
  EXPECT_EQ(q.nilpotency_class, 2);
}
