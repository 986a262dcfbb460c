#include <gtest/gtest.h>

#include "oracles.hpp"
#include "petersson/geom_side.hpp"
#include "petersson/local_gsp4.hpp"

using namespace petersson;

namespace {

const HalfIntegralSymMat& form(int i) {
  static const HalfIntegralSymMat f[4] = {HalfIntegralSymMat::binary(1, 0, 1), HalfIntegralSymMat::binary(3, 2, 3),
                                          HalfIntegralSymMat::binary(3, 1, 5), HalfIntegralSymMat::binary(1, 3, 7)};
  return f[i];
}

template <class F>
void for_each_admissible(long p, int tau_max, F f) {
  for (int i = 0; i < 4; ++i) {
    if (form(i).det_two_sigma() % p == 0) continue;
    for (int tau = 0; tau <= tau_max; ++tau)
      for (int t = 0; 2 * t <= tau; ++t)
        for (int al = 0; 2 * al <= tau; ++al) f(LocalSpec{p, tau, t}, DiagData{al, tau - al, form(i)});
  }
}

}  // namespace

TEST(LocalIntegral, UnramifiedIsOne) {
  const LocalSpec s{7, 0, 0};
  const DiagData d{0, 0, form(2)};
  EXPECT_EQ(local_integral_oracle(s, d).value, 1);
  const auto e = local_integral_explicit(s, d);
  ASSERT_TRUE(std::holds_alternative<LocalIntegralValue>(e));
  EXPECT_EQ(std::get<LocalIntegralValue>(e).value, 1);
  EXPECT_EQ(std::get<LocalIntegralValue>(e).provenance, Provenance::Unramified);
}

TEST(LocalIntegral, UnitAVanishingExample) {
  const LocalSpec s{5, 4, 1};
  const DiagData d{0, 4, HalfIntegralSymMat::identity(2)};
  const auto e = local_integral_explicit(s, d);
  ASSERT_TRUE(std::holds_alternative<LocalIntegralValue>(e));
  EXPECT_EQ(std::get<LocalIntegralValue>(e).value, 0);
  EXPECT_EQ(std::get<LocalIntegralValue>(e).provenance, Provenance::CorAVanish);
  EXPECT_EQ(local_integral_oracle(s, d).value, 0);
}

TEST(LocalIntegral, CaseThreeVanishesAtThreeForIdentity) {
  const LocalSpec s{3, 4, 2};
  const DiagData d{2, 2, HalfIntegralSymMat::identity(2)};
  const auto e = local_integral_explicit(s, d);
  ASSERT_TRUE(std::holds_alternative<LocalIntegralValue>(e));
  EXPECT_EQ(std::get<LocalIntegralValue>(e).provenance, Provenance::Case3);
  EXPECT_EQ(std::get<LocalIntegralValue>(e).value, 0);
  EXPECT_EQ(local_integral_oracle(s, d).value, 0);
}

TEST(LocalIntegral, OpenCornersAreNotCovered) {
  // tau' = 1 in the alpha = beta = t configuration
  const auto e = local_integral_explicit({3, 2, 1}, {1, 1, form(0)});
  EXPECT_TRUE(std::holds_alternative<NotCovered>(e));
  // alpha = tau' - 1 with tau' = 2: covered when p does not divide a c, open otherwise
  const auto f = local_integral_explicit({3, 4, 2}, {1, 3, HalfIntegralSymMat::binary(1, 3, 7)});
  EXPECT_TRUE(std::holds_alternative<LocalIntegralValue>(f));
  const auto g = local_integral_explicit({5, 4, 2}, {1, 3, HalfIntegralSymMat::binary(5, 1, 1)});
  EXPECT_TRUE(std::holds_alternative<NotCovered>(g));
}

TEST(LocalIntegral, ExplicitMatchesOracleSmallSweep) {
  for (long p : {3L, 5L})
    for_each_admissible(p, p == 3 ? 6 : 4, [](const LocalSpec& s, const DiagData& d) {
      const auto e = local_integral_explicit(s, d);
      if (const auto* v = std::get_if<LocalIntegralValue>(&e))
        EXPECT_EQ(v->value, local_integral_oracle(s, d).value)
            << "p=" << s.p << " tau=" << s.tau << " t=" << s.t << " alpha=" << d.alpha << " " << d.sigmaU.str();
    });
}

TEST(LocalIntegral, OracleStableUnderMargin) {
  for_each_admissible(3, 4, [](const LocalSpec& s, const DiagData& d) {
    EXPECT_EQ(local_integral_oracle(s, d, 0).value, local_integral_oracle(s, d, 1).value)
        << "tau=" << s.tau << " t=" << s.t << " alpha=" << d.alpha << " " << d.sigmaU.str();
  });
}

TEST(LocalIntegral, OracleMatchesLiteralResidueSum) {
  for (long p : {3L, 5L})
    for_each_admissible(p, p == 3 ? 3 : 2, [](const LocalSpec& s, const DiagData& d) {
      EXPECT_EQ(local_integral_oracle(s, d).value, local_integral_bruteforce(s, d))
          << "p=" << s.p << " tau=" << s.tau << " t=" << s.t << " alpha=" << d.alpha << " " << d.sigmaU.str();
    });
}

TEST(LocalIntegral, LiteralSumStableUnderMargin) {
  for_each_admissible(3, 2, [](const LocalSpec& s, const DiagData& d) {
    EXPECT_EQ(local_integral_bruteforce(s, d, 0), local_integral_bruteforce(s, d, 1));
  });
}

TEST(LocalIntegral, OracleCertifiesStats) {
  OracleStats st;
  local_integral_oracle({3, 4, 2}, {2, 2, form(0)}, 0, &st);
  EXPECT_EQ(st.level, 3);
  EXPECT_GT(st.evaluations, 0);
}

TEST(LocalIntegral, RejectsDivisibleDeterminant) {
  // 4 det = 4 * 3 for (1, 0, 3); p = 3
  EXPECT_THROW(local_integral_oracle({3, 2, 1}, {1, 1, HalfIntegralSymMat::binary(1, 0, 3)}), UnsupportedRegime);
  EXPECT_THROW(local_integral_explicit({3, 2, 1}, {1, 1, HalfIntegralSymMat::binary(1, 0, 3)}), UnsupportedRegime);
}

TEST(LocalIntegral, RejectsInvalidShapes) {
  EXPECT_THROW(validate_local({3, 4, 3}, {2, 2, form(0)}), std::invalid_argument);  // t > tau / 2
  EXPECT_THROW(validate_local({3, 4, 1}, {3, 1, form(0)}), std::invalid_argument);  // alpha > beta
  EXPECT_THROW(validate_local({4, 2, 1}, {1, 1, form(0)}), std::invalid_argument);  // not prime
}

TEST(Reduction, DiagonalInputKeepsForm) {
  const auto d = reduce_to_diagonal(IntMat{{1, 0}, {0, 9}}, form(2), 3, 2);
  EXPECT_EQ(d.alpha, 0);
  EXPECT_EQ(d.beta, 2);
  EXPECT_EQ(d.sigmaU, form(2));
}

TEST(Reduction, SolutionsGiveEquivalentForms) {
  const auto I = HalfIntegralSymMat::identity(2);
  for (long p : {3L, 7L})
    for (int tau = 1; tau <= 4; ++tau) {
      const Int r = ipow(p, static_cast<unsigned long>(tau));
      for (const auto& A : enumerate_A(I, I, r)) {
        const auto d = reduce_to_diagonal(A, I, p, tau);
        EXPECT_EQ(d.alpha + d.beta, tau);
        EXPECT_LE(d.alpha, d.beta);
        EXPECT_EQ(d.sigmaU.det(), I.det());
      }
    }
}

TEST(Reduction, UnequalDeterminantOrdersAreOutsideRegime) {
  // det A has p-order 1 while tau = 2
  EXPECT_THROW(reduce_to_diagonal(IntMat{{1, 0}, {0, 3}}, form(0), 3, 2), UnsupportedRegime);
  EXPECT_THROW(reduce_to_diagonal(IntMat{{1, 0}, {0, 27}}, form(0), 3, 2), std::invalid_argument);
  EXPECT_THROW(reduce_to_diagonal(IntMat{{1, 0}, {0, 9}}, HalfIntegralSymMat::binary(1, 0, 3), 3, 2),
               UnsupportedRegime);
}

TEST(Ramanujan, PrintedCases) {
  EXPECT_EQ(ramanujan_sum(3, 3, 2), -3);
  EXPECT_EQ(ramanujan_sum(9, 3, 2), 6);
  EXPECT_EQ(ramanujan_sum(1, 3, 2), 0);
  EXPECT_EQ(ramanujan_sum(5, 7, 0), 1);
}

TEST(Ramanujan, MatchesUnitSums) {
  for (long p : {2L, 3L, 5L, 7L})
    for (int m = 0; m <= (p == 7 ? 3 : 4); ++m) {
      const long pm = ipow64(p, static_cast<unsigned>(m));
      for (long l = -pm; l <= pm; ++l) EXPECT_EQ(ramanujan_sum(l, p, m), oracle::unit_ramanujan(l, p, m));
    }
}

TEST(CaseSums, CaseFourIsRelaxedMinusCaseThree) {
  for (long p : {3L, 5L, 7L})
    for (int tp = 1; tp <= 3; ++tp)
      for (int i = 0; i < 4; ++i) {
        const auto& f = form(i);
        if (f.det_two_sigma() % p == 0) continue;
        EXPECT_EQ(case4_sum(p, tp, f.a(), f.b(), f.c()),
                  case4_relaxed_sum(p, tp, f.a(), f.b(), f.c()) - case3_sum(p, tp, f.a(), f.b(), f.c()));
      }
}

TEST(Bounds, TrivialBoundValues) {
  EXPECT_EQ(trivial_bound({3, 4, 1}, {2, 2, form(0)}), 729);  // p^{3 tau / 2}
  EXPECT_EQ(trivial_bound({3, 0, 0}, {0, 0, form(0)}), 1);
  EXPECT_EQ(trivial_bound_general(3, 4, {2, 2}), trivial_bound({3, 4, 1}, {2, 2, form(0)}));
  EXPECT_EQ(trivial_bound_general(5, 3, {1, 2}), Rat(ipow(5, 2) * ipow(5, 2)));
}

TEST(Bounds, VanishingPassesAndInflatedFails) {
  const LocalSpec s{5, 4, 1};
  const DiagData d{0, 4, HalfIntegralSymMat::identity(2)};
  const double C = conj_constant(5);
  EXPECT_TRUE(conj_bound_check(s, d, 0, C));
  const Rat inflated = Rat(static_cast<long>(2 * C * std::pow(5.0, conj_exponent(s)) + 1));
  EXPECT_FALSE(conj_bound_check(s, d, inflated, C));
  EXPECT_FALSE(case34_bound_check(s, Rat(static_cast<long>(case34_constant(5) * std::pow(5.0, 3.0)) + 1)));
}

TEST(Bounds, SweepSatisfiesAllBounds) {
  for (long p : {3L, 5L}) {
    const double C = conj_constant(p);
    for_each_admissible(p, 4, [&](const LocalSpec& s, const DiagData& d) {
      const auto v = local_integral(s, d);
      EXPECT_LE(abs(v.value), trivial_bound(s, d));
      EXPECT_TRUE(conj_bound_check(s, d, v.value, C));
      if (v.provenance == Provenance::Case3 || v.provenance == Provenance::Case4)
        EXPECT_TRUE(case34_bound_check(s, v.value));
    });
  }
}

TEST(Oracle, DependsOnlyOnResiduesUsedByTheMemoKey) {
  // a matters mod p^beta, b and c mod p^alpha
  for (long p : {3L, 5L})
    for_each_admissible(p, 4, [&](const LocalSpec& s, const DiagData& d) {
      const long mb = ipow64(p, d.beta), ma = ipow64(p, d.alpha);
      const auto& f = d.sigmaU;
      const HalfIntegralSymMat g = HalfIntegralSymMat::binary(f.a() + mb, f.b() + 2 * ma, f.c() + 3 * ma);
      if (g.det_two_sigma() % p == 0) return;
      EXPECT_EQ(local_integral_oracle(s, d).value, local_integral_oracle(s, {d.alpha, d.beta, g}).value)
          << "p=" << p << " tau=" << s.tau << " t=" << s.t << " alpha=" << d.alpha << " " << f.str();
    });
}
