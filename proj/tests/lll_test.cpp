#include "kzred/lll.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kzred/error.hpp"
#include "test_support.hpp"

namespace kzred {
namespace {

using testing::product_of_abs_diagonal;
using testing::qrz_mismatch;
using testing::random_r;

// Printed outputs of the two KZ algorithms on the worked 5x5 example.
RealMatrix printed_baseline_output() {
  return RealMatrix::from_rows({
      {-0.2256, -0.0792, 0.0125, 0, 0},
      {0, 0.2148, -0.0728, -0.0029, -0.0012},
      {0, 0, 0.2145, 0.0527, -0.0211},
      {0, 0, 0, -0.1103, 0.0306},
      {0, 0, 0, 0, 0.6221},
  });
}

RealMatrix printed_modified_output() {
  return RealMatrix::from_rows({
      {-0.2256, 0.0792, -0.0126, 0.0028, -0.0621},
      {0, -0.2148, 0.0728, -0.0084, 0.0930},
      {0, 0, 0.2145, 0.0292, -0.0029},
      {0, 0, 0, -0.2320, 0.0731},
      {0, 0, 0, 0, -0.2959},
  });
}

TEST(SizeReduce, AlreadyReducedIsFixedPoint) {
  const RealMatrix r = RealMatrix::from_rows({{2.0, 0.9, -1.0}, {0, 1.0, 0.3}, {0, 0, 0.5}});
  const auto [rr, zz] = size_reduce(r, IntMatrix::identity(3));
  EXPECT_EQ(rr, r);
  EXPECT_TRUE(zz.is_identity());
}

TEST(SizeReduce, SingleEntryMatchesBestMultiplier) {
  const RealMatrix r = RealMatrix::from_rows({{1.0, 0.6}, {0, 1.0}});
  // Oracle: the multiplier in -2..2 leaving the smallest remainder.
  int best_mu = 0;
  for (int mu = -2; mu <= 2; ++mu) {
    if (std::abs(0.6 - mu) < std::abs(0.6 - best_mu)) best_mu = mu;
  }
  ASSERT_EQ(best_mu, 1);
  const auto [rr, zz] = size_reduce(r, IntMatrix::identity(2));
  EXPECT_NEAR(rr(0, 1), 0.6 - best_mu, 1e-15);
  EXPECT_EQ(zz(0, 1), -best_mu);
  EXPECT_EQ(rr(1, 1), 1.0);
}

TEST(SizeReduce, ExactHalfIsLeftAlone) {
  const RealMatrix r = RealMatrix::from_rows({{1.0, 0.5}, {0, 1.0}});
  const auto [rr, zz] = size_reduce(r, IntMatrix::identity(2));
  EXPECT_EQ(rr(0, 1), 0.5);
  EXPECT_TRUE(zz.is_identity());
}

TEST(SizeReduce, IntegerUnitTriangularTransformOnRandomInputs) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 + seed % 8;
    RealMatrix r = random_r(n, seed);
    // Spoil size reduction.
    for (std::size_t j = 1; j < n; ++j) r(0, j) += 7.3 * r(0, 0);
    const auto [rr, zz] = size_reduce(r, IntMatrix::identity(n));
    EXPECT_TRUE(is_size_reduced(rr));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(rr(i, i), r(i, i));
      EXPECT_EQ(zz(i, i), 1);
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(zz(i, j), 0);
    }
    const RealMatrix diff = r * testing::to_real(zz) - rr;
    EXPECT_LT(diff.frobenius_norm(), 1e-12 * r.frobenius_norm());
  }
}

TEST(SizeReduce, ZeroDiagonalRejected) {
  const RealMatrix r = RealMatrix::from_rows({{0.0, 1.0}, {0, 1.0}});
  EXPECT_THROW(size_reduce(r, IntMatrix::identity(2)), Error);
}

TEST(LllReduce, IdentityIsFixed) {
  for (double delta : {0.3, 0.75, 1.0}) {
    const QrzFactorization f = lll_reduce(RealMatrix::identity(4), delta);
    EXPECT_EQ(f.r_bar, RealMatrix::identity(4));
    EXPECT_TRUE(f.z.is_identity());
    EXPECT_EQ(f.swaps, 0u);
  }
}

TEST(LllReduce, TwoByTwoSwapBringsShortVectorFirst) {
  const RealMatrix r = RealMatrix::from_rows({{1.0, 0.0}, {0.0, 0.1}});
  // Oracle: shortest nonzero vector by direct search over a small box.
  double shortest = std::numeric_limits<double>::infinity();
  for (int a = -10; a <= 10; ++a) {
    for (int b = -10; b <= 10; ++b) {
      if (a != 0 || b != 0) shortest = std::min(shortest, std::hypot(1.0 * a, 0.1 * b));
    }
  }
  const QrzFactorization f = lll_reduce(r, 1.0);
  EXPECT_NEAR(std::abs(f.r_bar(0, 0)), shortest, 1e-15);
  EXPECT_NEAR(std::abs(f.r_bar(1, 1)), 1.0, 1e-15);
  EXPECT_EQ(f.swaps, 1u);
  EXPECT_TRUE(is_unimodular(f.z));
}

TEST(LllReduce, RandomSuiteSatisfiesContract) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const std::size_t n = 2 + seed % 11;
    const double delta = seed % 3 == 0 ? 0.75 : 1.0;
    RealMatrix r = random_r(n, seed);
    // Skew the basis so the reduction has work to do.
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) r(i, j) += 3.0 * r(i, i) * static_cast<double>((i + j) % 4);
    }
    const QrzFactorization f = lll_reduce(r, delta);
    ASSERT_TRUE(is_lll_reduced(f.r_bar, delta)) << "seed " << seed;
    ASSERT_TRUE(is_unimodular(f.z)) << "seed " << seed;
    EXPECT_NEAR(product_of_abs_diagonal(f.r_bar) / product_of_abs_diagonal(r), 1.0, 1e-9);
    // The oracle forms A Z in floating point, so its own error grows with |Z|.
    const double oracle_noise = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) *
                                to_double(f.z.max_abs());
    EXPECT_LT(qrz_mismatch(r, f.z, f.r_bar), std::max(1e-10, oracle_noise)) << "seed " << seed;

    const QrzFactorization again = lll_reduce(f.r_bar, delta);
    EXPECT_TRUE(again.z.is_identity()) << "seed " << seed;
    EXPECT_EQ(again.swaps, 0u);
  }
}

TEST(LllReduce, InvalidDeltaAndRankDeficiency) {
  try {
    lll_reduce(RealMatrix::identity(2), 0.25);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDelta);
  }
  EXPECT_THROW(lll_reduce(RealMatrix::identity(2), 1.01), Error);
  try {
    lll_reduce(RealMatrix::from_rows({{1.0, 1.0}, {0.0, 0.0}}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankDeficient);
  }
}

TEST(LllPredicates, SizeReduced) {
  EXPECT_TRUE(is_size_reduced(RealMatrix::identity(3)));
  EXPECT_FALSE(is_size_reduced(RealMatrix::from_rows({{1.0, 0.51}, {0, 1.0}})));
  EXPECT_TRUE(is_size_reduced(printed_modified_output()));
}

TEST(LllPredicates, PrintedBaselineOutputFailsLovasz) {
  const RealMatrix r = printed_baseline_output();
  EXPECT_GT(r(2, 2) * r(2, 2), r(2, 3) * r(2, 3) + r(3, 3) * r(3, 3));
  EXPECT_FALSE(is_lll_reduced(r, 1.0));
}

TEST(LllPredicates, PrintedModifiedOutputIsLllReduced) {
  EXPECT_TRUE(is_lll_reduced(printed_modified_output(), 1.0));
  EXPECT_TRUE(is_lll_reduced(RealMatrix::identity(4), 1.0));
}

}  // namespace
}  // namespace kzred
