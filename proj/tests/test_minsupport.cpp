#include <gtest/gtest.h>

#include "common.hpp"

using namespace monores;
using namespace testing_support;

namespace {

Vector column_vector(const GradedFreeComplex& c, std::size_t n, std::size_t j) {
  Vector z(c.basis(n - 1).size(), c.field().zero());
  for (const auto& [r, v] : c.differential(n).column(j)) z[r] = v;
  return z;
}

/// M basis 1 with the second top element replaced by its sum with the first.
GradedFreeComplex damaged_m() { return add_multiple(load_complex("M_basis1.json"), 2, 1, 0, Scalar(1)); }

}  // namespace

TEST(BoundarySupport, Fixtures) {
  auto m1 = load_complex("M_basis1.json");
  auto m2 = load_complex("M_basis2.json");
  EXPECT_EQ(boundary_support(m1, 12).size(), 3u);
  EXPECT_EQ(boundary_support(m2, 12).size(), 4u);
  EXPECT_THROW(boundary_support(m1, 0), Error);
  EXPECT_THROW(boundary_support(m1, 99), Error);
}

TEST(MinimalSupportCycle, Examples) {
  auto c = minimal_resolution(load_ideal("triangle.ideal"), rationals());
  auto bar = bar_reduce(c);
  // a single syzygy of the triangle has two-element support and is a circuit
  EXPECT_TRUE(is_minimal_support_cycle(bar, 0, column_vector(c, 1, 0)));
  // the sum of both syzygies has three-element support
  Vector sum = column_vector(c, 1, 0);
  auto other = column_vector(c, 1, 1);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = sum[i] + other[i];
  ASSERT_EQ(support_of(sum).size(), 3u);
  EXPECT_FALSE(is_minimal_support_cycle(bar, 0, sum));
  EXPECT_THROW(is_minimal_support_cycle(bar, 0, Vector{Scalar(1), Scalar(0), Scalar(0)}), Error);
}

TEST(MinimalSupportBasis, FixturesPass) {
  EXPECT_TRUE(has_minimal_support_basis(load_complex("rp2_basis.json")));
  EXPECT_TRUE(has_minimal_support_basis(load_complex("M_basis1.json")));
  EXPECT_TRUE(has_minimal_support_basis(load_complex("M_basis2.json")));
  EXPECT_TRUE(noncomparable_supports(load_complex("rp2_basis.json")));
}

TEST(MinimalSupportBasis, RepairsDamagedBasis) {
  auto bad = damaged_m();
  bad.check_complex();
  EXPECT_TRUE(is_resolution(bad).ok);
  EXPECT_FALSE(has_minimal_support_basis(bad));
  auto [fixed, log] = make_minimal_support_basis(bad);
  EXPECT_FALSE(log.empty());
  EXPECT_TRUE(has_minimal_support_basis(fixed));
  EXPECT_TRUE(is_resolution(fixed).ok);
  EXPECT_EQ(betti_table(fixed), betti_table(bad));
  EXPECT_EQ(fixed.basis(0), bad.basis(0));
}

TEST(MinimalSupportBasis, Idempotent) {
  auto c = load_complex("M_basis2.json");
  auto [same, log] = make_minimal_support_basis(c);
  EXPECT_TRUE(log.empty());
  for (std::size_t n = 1; n < c.num_degrees(); ++n) EXPECT_EQ(same.differential(n), c.differential(n));
}

TEST(MinimalSupportBasis, RejectsNonMinimalComplex) {
  auto t = taylor_complex(load_ideal("triangle.ideal"), rationals());
  try {
    make_minimal_support_basis(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMinimal);
  }
}

TEST(NoncomparableSupports, DuplicatedColumn) {
  std::vector<std::vector<BasisElement>> basis{{{0, {1, 0}}, {1, {0, 1}}}, {{2, {1, 1}}, {3, {1, 1}}}};
  auto d1 = SparseMatrix::from_triplets(
      2, 2, {{0, 0, Scalar(1)}, {1, 0, Scalar(-1)}, {0, 1, Scalar(1)}, {1, 1, Scalar(-1)}});
  GradedFreeComplex c(2, rationals(), basis, {SparseMatrix(), d1});
  EXPECT_FALSE(noncomparable_supports(c));
  EXPECT_FALSE(noncomparable_supports(damaged_m()));
}

// Every minimal resolution is turned into a minimal-support basis with the
// same Betti table, and the circuit test then holds column by column.
class MinSupportProperty : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(MinSupportProperty, RandomIdeals) {
  auto ideal = random_ideal(GetParam());
  for (auto f : {rationals(), prime_field(2)}) {
    auto c = minimal_resolution(ideal, f);
    auto [b, log] = make_minimal_support_basis(c);
    EXPECT_TRUE(has_minimal_support_basis(b));
    EXPECT_TRUE(noncomparable_supports(b));
    EXPECT_TRUE(is_resolution(b).ok);
    EXPECT_EQ(betti_table(b), betti_table(c));
    auto again = make_minimal_support_basis(b);
    EXPECT_TRUE(again.second.empty());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MinSupportProperty, ::testing::Range(300u, 340u));
