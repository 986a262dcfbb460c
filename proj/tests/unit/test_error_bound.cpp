#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "petersson/error_bound.hpp"

using namespace petersson;

TEST(OffDiagonal, LevelScalingAtKappaSeventeen) {
  for (long N : {1L, 2L, 7L, 100L}) {
    const auto a = off_diagonal_bound({17, 9, N, 1.0});
    const auto b = off_diagonal_bound({17, 9, 2 * N, 1.0});
    EXPECT_NEAR(static_cast<double>(a / b), 32.0, 1e-9);
  }
  const long double l1 = log_off_diagonal_bound({17, 5, 1, 1.0});
  const long double l10 = log_off_diagonal_bound({17, 5, 10, 1.0});
  EXPECT_NEAR(static_cast<double>(l1 - l10), 5 * std::log(10.0), 1e-12);
}

TEST(OffDiagonal, ClosedValueAtUnitParameters) {
  // C kappa^{21/2} 8^{kappa/2}
  const double expect = 10.5 * std::log(17.0) + 8.5 * std::log(8.0);
  EXPECT_NEAR(static_cast<double>(log_off_diagonal_bound({17, 1, 1, 1.0})), expect, 1e-12);
  EXPECT_NEAR(static_cast<double>(log_off_diagonal_bound({17, 1, 1, 3.0})), expect + std::log(3.0), 1e-12);
}

TEST(OffDiagonal, MonotoneInLevelAndSimilitude) {
  for (int kappa : {17, 20, 30}) {
    long double prev = off_diagonal_bound({kappa, 4, 1, 1.0});
    for (long N = 2; N <= 50; ++N) {
      const long double v = off_diagonal_bound({kappa, 4, N, 1.0});
      EXPECT_LT(v, prev);
      prev = v;
    }
    prev = off_diagonal_bound({kappa, 1, 3, 1.0});
    for (long r = 2; r <= 50; ++r) {
      const long double v = off_diagonal_bound({kappa, r, 3, 1.0});
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(OffDiagonal, OutsideRegime) {
  EXPECT_THROW(off_diagonal_bound({16, 1, 1, 1.0}), UnsupportedRegime);
  EXPECT_THROW(off_diagonal_bound({17, 0, 1, 1.0}), std::invalid_argument);
  EXPECT_THROW(off_diagonal_bound({17, 1, 1, 0.0}), std::invalid_argument);
}

TEST(Euler, BasicCase) {
  const auto c = euler_sum_check(0.0, 1.0, 4.0);
  EXPECT_TRUE(c.holds);
  // line integral of (x^2 + 1)^{-2} is pi / 2
  EXPECT_NEAR(c.rhs / 5.0, std::numbers::pi / 2, 1e-12);
}

TEST(Euler, KnownLatticeSum) {
  // sum_n 1 / (n^2 + 1) = pi coth pi; the truncation tail adds about 2 / T
  const auto c = euler_sum_check(0.0, 1.0, 2.0);
  const double exact = std::numbers::pi / std::tanh(std::numbers::pi);
  EXPECT_GE(c.lhs, exact);
  EXPECT_LT(c.lhs - exact, 2.0 / 1998);
  EXPECT_NEAR(c.rhs, 3 * std::numbers::pi, 1e-12);
  EXPECT_TRUE(c.holds);
}

TEST(Euler, LargeDelta) {
  for (double D : {10.0, 50.0, 200.0}) {
    const auto c = euler_sum_check(0.3, D, 4.0, 5000);
    EXPECT_TRUE(c.holds) << D;
    EXPECT_NEAR(c.rhs * D / (4 + D), std::numbers::pi / (2 * D * D * D), 1e-12 / (D * D * D));
  }
}

TEST(Euler, PeriodicInShift) {
  const auto a = euler_sum_check(0.25, 0.7, 6.0), b = euler_sum_check(3.25, 0.7, 6.0);
  EXPECT_NEAR(a.lhs, b.lhs, 1e-12 * a.lhs);
}

TEST(Euler, RandomTriples) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> A(-5, 5), D(0.02, 30), K(2, 40);
  for (int it = 0; it < 100; ++it) {
    const double a = A(rng), Dl = D(rng), k = K(rng);
    const auto c = euler_sum_check(a, Dl, k);
    EXPECT_TRUE(c.holds) << "a=" << a << " Delta=" << Dl << " kappa=" << k << " lhs=" << c.lhs << " rhs=" << c.rhs;
  }
}

TEST(Euler, RejectsBadInput) {
  EXPECT_THROW(euler_sum_check(0, 0, 4), std::invalid_argument);
  EXPECT_THROW(euler_sum_check(0, 1, 1), std::invalid_argument);
}

TEST(Quantitative, LevelMustBePrimeToS) {
  const auto I = HalfIntegralSymMat::identity(2);
  const SimilitudeSpec spec{{PrimeSpec{3, Coweight({2, 0, 1})}}};
  EXPECT_THROW(quantitative_formula(I, I, spec, 18, 6), UnsupportedRegime);
  EXPECT_NO_THROW(quantitative_formula(I, I, spec, 18, 5));
}

TEST(Quantitative, EmptySetWindow) {
  const auto I = HalfIntegralSymMat::identity(2);
  for (long N : {1L, 5L, 35L}) {
    const auto q = quantitative_formula(I, I, {}, 18, N);
    EXPECT_NEAR(static_cast<double>(q.main / (4 * arch_factor(I, I, 18))), 1.0, 1e-12);
    EXPECT_NEAR(static_cast<double>(q.error_bound / off_diagonal_bound({18, 1, N, 1.0})), 1.0, 1e-12);
    EXPECT_TRUE(q.constant_caveat);
  }
}

TEST(Quantitative, NeedsRankTwo) {
  const auto I3 = HalfIntegralSymMat::identity(3);
  EXPECT_THROW(quantitative_formula(I3, I3, {}, 18, 1), UnsupportedRegime);
}
