#include <gtest/gtest.h>

#include "common.hpp"

using namespace monores;
using namespace testing_support;

TEST(Rigidity, KoszulIsRigid) {
  auto t = betti_table(minimal_resolution(load_ideal("koszul2.ideal"), rationals()));
  EXPECT_TRUE(is_rigid(t).rigid);
  EXPECT_EQ(is_rigid(t).describe(), "rigid");
  auto p = betti_poset(t);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_TRUE(is_hcw(p, rationals()));
}

TEST(Rigidity, TriangleHasRepeatedBetti) {
  auto t = betti_table(minimal_resolution(load_ideal("triangle.ideal"), rationals()));
  auto r = is_rigid(t);
  EXPECT_FALSE(r.rigid);
  EXPECT_EQ(r.degree, 1);
  EXPECT_EQ(r.first, (Multidegree{1, 1, 1}));
  EXPECT_EQ(r.beta, 2);
  EXPECT_FALSE(r.second.has_value());
  EXPECT_EQ(betti_poset(t).size(), 4u);
  EXPECT_FALSE(is_hcw(betti_poset(t), rationals()));
}

TEST(Rigidity, MHasComparableDegrees) {
  auto r = is_rigid(betti_table(minimal_resolution(ideal_M(), rationals())));
  EXPECT_FALSE(r.rigid);
  ASSERT_TRUE(r.second.has_value());
  EXPECT_TRUE(strictly_below(r.first, *r.second));
  EXPECT_EQ(r.degree, 1);
}

TEST(Rigidity, Rp2DependsOnCharacteristic) {
  auto q = rigid_vs_hcw(rp2(), rationals());
  auto two = rigid_vs_hcw(rp2(), prime_field(2));
  EXPECT_TRUE(q.rigidity.rigid);
  EXPECT_FALSE(two.rigidity.rigid);
  EXPECT_TRUE(q.agree());
  EXPECT_TRUE(two.agree());
  EXPECT_EQ(betti_poset(q.table).size(), 31u);
}

TEST(Rigidity, RigidMeansDegreeMapIsIsomorphism) {
  auto f = rationals();
  auto b = make_minimal_support_basis(minimal_resolution(rp2(), f)).first;
  auto p = incidence_poset(b);
  EXPECT_TRUE(degree_map_is_isomorphism(p, betti_poset(betti_table(b))));
  auto m = incidence_poset(load_complex("M_basis1.json"));
  EXPECT_FALSE(degree_map_is_isomorphism(m, betti_poset(betti_table(load_complex("M_basis1.json")))));
}

// A rigid ideal whose resolution has a zero entry between two comparable
// Betti degrees: the incidence order is strictly smaller than the degree
// order, though both posets are hcw.
TEST(Rigidity, IncidenceOrderCanBeSmallerThanDegreeOrder) {
  auto ideal = minimalize({{0, 1, 1, 2, 2}, {0, 1, 2, 2, 0}, {1, 1, 0, 0, 2}, {2, 0, 2, 1, 2}, {3, 1, 0, 3, 1}});
  for (auto f : {rationals(), prime_field(2)}) {
    auto b = make_minimal_support_basis(minimal_resolution(ideal, f)).first;
    auto t = betti_table(b);
    ASSERT_TRUE(is_rigid(t).rigid);
    auto p = incidence_poset(b);
    auto q = betti_poset(t);
    EXPECT_TRUE(degree_map_is_monotone_bijection(p, q));
    EXPECT_FALSE(degree_map_is_isomorphism(p, q));
    EXPECT_LT(p.relations().size(), q.relations().size());
    EXPECT_TRUE(is_hcw(p, f));
    EXPECT_TRUE(is_hcw(q, f));
  }
}

TEST(Rigidity, BettiPosetIdsFollowSortedDegrees) {
  BettiTable t{{{0, {0, 1}}, 1}, {{0, {1, 0}}, 1}, {{1, {1, 1}}, 1}};
  auto p = betti_poset(t);
  EXPECT_EQ(p.degree(0), (Multidegree{0, 1}));
  EXPECT_EQ(p.degree(2), (Multidegree{1, 1}));
  EXPECT_EQ(p.covers(), (std::vector<std::pair<Id, Id>>{{0, 2}, {1, 2}}));
}

class RigidityProperty : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(RigidityProperty, RigidIffBettiPosetIsHcw) {
  auto ideal = random_ideal(GetParam());
  for (auto f : {rationals(), prime_field(2)}) {
    auto c = rigid_vs_hcw(ideal, f);
    EXPECT_TRUE(c.agree()) << c.rigidity.describe();
    if (c.rigidity.rigid) {
      auto b = make_minimal_support_basis(minimal_resolution(ideal, f)).first;
      EXPECT_TRUE(degree_map_is_monotone_bijection(incidence_poset(b), betti_poset(c.table)));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RigidityProperty, ::testing::Range(700u, 760u));
