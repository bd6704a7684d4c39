#include <gtest/gtest.h>

#include <algorithm>

#include "engelkit/expr.hpp"
#include "engelkit/nq.hpp"
#include "engelkit/pcgroup.hpp"
#include "engelkit/subgroup.hpp"
#include "support.hpp"

using namespace engelkit;

namespace {

ExponentVector ev(std::initializer_list<long long> xs) {
  ExponentVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// g1, g2 of weight 1 and g3 = [g2,g1] central.
PcPresentation free_class2() {
  PcPresentation p(3);
  p.set_weight(2, 2);
  p.set_conjugate_tail(1, 0, {{2, 1}});
  p.finalize();
  return p;
}

// g1 = reflection, g2 = rotation, g3 = rotation^2.
PcPresentation dihedral8() {
  PcPresentation p(3);
  p.set_weight(2, 2);
  for (int g = 0; g < 3; ++g) p.set_relative_order(g, 2);
  p.set_power(1, {{2, 1}});
  p.set_conjugate_tail(1, 0, {{2, 1}});
  p.finalize();
  return p;
}

// g1 of order 2 acting as g2 -> g2 g3 with g3 central of infinite order; g2^{g1^2} = g2 g3^2 != g2.
PcPresentation inconsistent() {
  PcPresentation p(3);
  p.set_weight(2, 2);
  p.set_relative_order(0, 2);
  p.set_conjugate_tail(1, 0, {{2, 1}});
  p.finalize();
  return p;
}

}  // namespace

TEST(Collect, FreeClassTwo) {
  const auto p = free_class2();
  EXPECT_EQ(collect(p, GroupWord{}), ev({0, 0, 0}));
  EXPECT_EQ(collect(p, GroupWord({{1, 1}, {0, 1}})), ev({1, 1, 1}));
  EXPECT_EQ(collect(p, GroupWord({{0, -1}, {1, 1}, {0, 1}})), ev({0, 1, 1}));
  EXPECT_EQ(collect(p, GroupWord({{1, -1}, {0, -1}})), ev({-1, -1, 1}));
}

TEST(Collect, GroupOperations) {
  const auto p = free_class2();
  const auto u = collect(p, GroupWord({{1, 1}, {0, 1}}));
  EXPECT_TRUE(is_identity(pc_multiply(p, u, pc_invert(p, u))));
  EXPECT_TRUE(is_identity(pc_comm(p, u, u)));
  EXPECT_EQ(pc_power(p, u, 2), ev({2, 2, 3}));
  EXPECT_EQ(pc_power(p, u, 2), collect(p, GroupWord({{1, 1}, {0, 1}, {1, 1}, {0, 1}})));
  EXPECT_EQ(pc_power(p, u, -3), pc_invert(p, pc_power(p, u, 3)));
  EXPECT_EQ(pc_comm(p, ev({0, 1, 0}), ev({1, 0, 0})), ev({0, 0, 1}));
  EXPECT_EQ(format_element(p, ev({2, 0, -1})), "g1^2 g3^-1");
  EXPECT_EQ(format_element(p, ev({0, 0, 0})), "1");
}

TEST(Collect, FiniteRelativeOrders) {
  const auto p = dihedral8();
  const auto r = pc_generator(p, 1);
  const auto s = pc_generator(p, 0);
  EXPECT_TRUE(is_identity(pc_power(p, r, 4)));
  EXPECT_EQ(pc_power(p, r, 2), ev({0, 0, 1}));
  EXPECT_EQ(pc_conj(p, r, s), pc_invert(p, r));
  EXPECT_EQ(support::enumerate_elements(p).size(), 8u);
}

TEST(Consistency, DetectsInconsistentPresentation) {
  EXPECT_TRUE(consistency_check(free_class2()).empty());
  EXPECT_TRUE(consistency_check(dihedral8()).empty());
  const auto q = nilpotent_quotient(support::load_presentation("free2"), 3);
  EXPECT_TRUE(consistency_check(q.pcp).empty());
  const auto bad = consistency_check(inconsistent());
  ASSERT_FALSE(bad.empty());
  EXPECT_FALSE(bad.front().overlap.empty());
}

TEST(ExponentExpr, Semantics) {
  const auto q = nilpotent_quotient(support::load_presentation("free2"), 4);
  const auto& p = q.pcp;
  auto env = q.environment(support::load_presentation("free2"));
  support::Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    env["u"] = support::random_element(rng, p, 6);
    env["g"] = support::random_element(rng, p, 4);
    env["h"] = support::random_element(rng, p, 4);
    const auto e = [&](const char* s) { return evaluate_element_expr(p, s, env); };
    ASSERT_EQ(e("u^{g+h}"), pc_multiply(p, e("u^g"), e("u^h")));
    ASSERT_EQ(e("u^{(g+h)(-h)}"), e("u^{-hh-gh}"));
    ASSERT_EQ(e("u^{(g+h)(-h)}"), pc_conj(p, pc_invert(p, e("u^{g+h}")), env["h"]));
    ASSERT_EQ(e("u^{2g-1}"), pc_multiply(p, pc_power(p, e("u^g"), 2), pc_invert(p, env["u"])));
    ASSERT_EQ(e("u^{-g}"), pc_invert(p, e("u^g")));
  }
  EXPECT_TRUE(is_identity(evaluate_exponent_expr(p, env["u"], parse_exponent_expr(""), env)));
  EXPECT_THROW(evaluate_element_expr(p, "zz", env), ExprError);
  EXPECT_THROW(evaluate_element_expr(p, "[a,", env), ExprError);
}

TEST(ExponentExpr, NonDistributive) {
  // (g1+g2)(-h) is -g2h - g1h, not -g1h - g2h.
  const auto q = nilpotent_quotient(support::load_presentation("free2"), 4);
  auto env = q.environment(support::load_presentation("free2"));
  const auto e = [&](const char* s) { return evaluate_element_expr(q.pcp, s, env); };
  EXPECT_EQ(e("a^{(a+b)(-b)}"), e("a^{-bb-ab}"));
  EXPECT_NE(e("a^{(a+b)(-b)}"), e("a^{-ab-bb}"));
}

TEST(Subgroup, DihedralExamples) {
  const auto p = dihedral8();
  const auto rot = pc_generator(p, 1);
  const auto refl = pc_generator(p, 0);
  const auto s = induced_subgroup(p, {rot});
  EXPECT_FALSE(sift(p, s, refl).member);
  EXPECT_TRUE(sift(p, s, pc_identity(p)).member);
  EXPECT_TRUE(is_identity(sift(p, s, pc_identity(p)).residue));
  for (const auto& g : s.gens) EXPECT_TRUE(contains(p, s, g));
  const auto t = induced_subgroup(p, {refl, pc_power(p, rot, 2)});
  EXPECT_EQ(subgroup_order(p, t), Integer(4));
  EXPECT_TRUE(induced_subgroup(p, {}).trivial());
  const auto whole = induced_subgroup(p, {pc_generator(p, 0), pc_generator(p, 1), pc_generator(p, 2)});
  EXPECT_EQ(whole.pivots, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(whole, whole_group(p));
}

TEST(Subgroup, NormalClosureAndSeries) {
  const auto q = nilpotent_quotient(support::load_presentation("free2"), 5);
  const auto& p = q.pcp;
  const auto series = lower_central_series(p, whole_group(p));
  ASSERT_EQ(series.size(), 5u);
  std::vector<int> ranks;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto next = k + 1 < series.size() ? series[k + 1].gens.size() : 0;
    ranks.push_back(static_cast<int>(series[k].gens.size() - next));
  }
  EXPECT_EQ(ranks, (std::vector<int>{2, 1, 2, 3, 6}));
  EXPECT_EQ(nilpotency_class(p, {}), 0);
  EXPECT_EQ(nilpotency_class(p, induced_subgroup(p, {q.images[0]})), 1);

  // A central element generates its own normal closure.
  const auto z = pc_generator(p, static_cast<int>(p.size()) - 1);
  EXPECT_EQ(normal_closure(p, {z}), induced_subgroup(p, {z}));
  EXPECT_EQ(normal_closure(p, {q.images[0], q.images[1]}), whole_group(p));
}

TEST(Subgroup, GeneratorOrderIndependent) {
  const auto q = nilpotent_quotient(support::load_presentation("N"), 6);
  support::Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    std::vector<ExponentVector> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(support::random_element(rng, q.pcp, 5));
    const auto s = induced_subgroup(q.pcp, gens);
    std::reverse(gens.begin(), gens.end());
    ASSERT_EQ(induced_subgroup(q.pcp, gens), s);
    std::rotate(gens.begin(), gens.begin() + 1, gens.end());
    ASSERT_EQ(induced_subgroup(q.pcp, gens), s);
  }
}

TEST(Subgroup, ClassOfSInN) {
  const auto p = support::load_presentation("N");
  const auto q = nilpotent_quotient(p, 12);
  ASSERT_TRUE(q.stabilized);
  auto env = q.environment(p);
  const auto s = induced_subgroup(q.pcp, {env["a"], evaluate_element_expr(q.pcp, "a^b", env)});
  EXPECT_EQ(nilpotency_class(q.pcp, s), 6);
  EXPECT_EQ(lower_central_series(q.pcp, s).size(), 6u);
}
