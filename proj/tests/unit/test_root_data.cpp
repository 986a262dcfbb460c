#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "petersson/root_data.hpp"

using namespace petersson;

namespace {

std::vector<long> random_vec(std::mt19937_64& rng, int len, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<long> v(static_cast<size_t>(len));
  for (auto& x : v) x = d(rng);
  return v;
}

Character random_pgsp_character(std::mt19937_64& rng, int n) {
  // 2 k0 + k1 + ... + kn = 0 with k1 + ... + kn even
  auto k = random_vec(rng, n + 1, -4, 4);
  long s = 0;
  for (int i = 1; i <= n; ++i) s += k[i];
  if (s % 2 != 0) {
    k[1] += 1;
    s += 1;
  }
  k[0] = -s / 2;
  return Character(k);
}

}  // namespace

TEST(RootData, PairWithBasisVector) {
  const Coweight lam({5, 1, 2});
  EXPECT_EQ(pair(Character({1, 0, 0}), lam), Rat(lam.ell0()));
}

TEST(RootData, RhoPairingIsThreeHalvesTauMinusT) {
  const HalfWeight r = rho(2);
  EXPECT_EQ(r.two_chi, (std::vector<long>{3, -4, -2}));
  for (long tau = 0; tau <= 8; ++tau)
    for (long t = 0; 2 * t <= tau; ++t) EXPECT_EQ(pair(r, Coweight({tau, 0, t})), Rat(3 * tau) / 2 - t);
}

TEST(RootData, RhoKillsRelationVector) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(pair_raw(rho(n).two_chi, relation_vector(n), true), 0);
}

TEST(RootData, PairingIsRepresentativeIndependent) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    const Character chi = random_pgsp_character(rng, 3);
    auto raw = random_vec(rng, 4, -5, 5);
    const Rat direct = pair_raw(chi.k, raw);
    EXPECT_EQ(direct, pair(chi, Coweight(raw)));
  }
}

TEST(RootData, PairingIsWeylEquivariant) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 3; ++n) {
    const auto W = weyl_group(n);
    std::uniform_int_distribution<size_t> pick(0, W.size() - 1);
    for (int it = 0; it < 200; ++it) {
      const auto& w = W[pick(rng)];
      const Character chi = random_pgsp_character(rng, n);
      const Coweight lam(random_vec(rng, n + 1, -6, 6));
      EXPECT_EQ(pair(weyl_apply(w, chi), weyl_apply(w, lam)), pair(chi, lam));
    }
  }
}

TEST(RootData, PairingLengthMismatchThrows) {
  EXPECT_THROW(pair(Character({1, 0}), Coweight({1, 0, 0})), std::invalid_argument);
}

TEST(RootData, IdentityActsTrivially) {
  const Character chi({1, -1, -1});
  EXPECT_EQ(weyl_apply(WeylElement::identity(2), chi), chi);
  const Coweight lam({4, 0, 1});
  EXPECT_EQ(weyl_apply(WeylElement::identity(2), lam), lam);
}

TEST(RootData, SignFlipGenerator) {
  const Character chi({3, 5, -7});
  for (int i = 1; i <= 2; ++i) {
    auto expect = chi.k;
    expect[0] += expect[i];
    expect[i] = -expect[i];
    EXPECT_EQ(weyl_apply(WeylElement::sign_flip(2, i), chi).k, expect);
  }
}

TEST(RootData, GeneratorsCloseToGroupOfExpectedOrder) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<WeylElement> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(WeylElement::sign_flip(n, i));
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<int> p(n);
      for (int j = 0; j < n; ++j) p[j] = j;
      std::swap(p[i], p[i + 1]);
      gens.push_back(WeylElement::permutation(p));
    }
    // closure measured through the action on a generic character
    std::vector<long> generic(n + 1);
    for (int i = 0; i <= n; ++i) generic[i] = 3 * i * i + 1;
    std::set<std::vector<long>> seen{generic};
    std::vector<std::vector<long>> frontier{generic};
    while (!frontier.empty()) {
      std::vector<std::vector<long>> next;
      for (const auto& k : frontier)
        for (const auto& g : gens) {
          auto img = weyl_apply(g, Character(k)).k;
          if (seen.insert(img).second) next.push_back(img);
        }
      frontier = std::move(next);
    }
    long order = 1;
    for (int i = 1; i <= n; ++i) order *= 2 * i;
    EXPECT_EQ(static_cast<long>(seen.size()), order) << "n = " << n;
    EXPECT_EQ(static_cast<long>(weyl_group(n).size()), order);
  }
}

TEST(RootData, RootCorootPairingIsTwo) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& a : roots(n)) EXPECT_EQ(pair(a, coroot(a)), 2) << "n = " << n;
}

TEST(RootData, WeylGroupPermutesRoots) {
  for (int n = 1; n <= 3; ++n) {
    const auto R = roots(n);
    const std::set<Character> rs(R.begin(), R.end());
    for (const auto& w : weyl_group(n))
      for (const auto& a : R) EXPECT_TRUE(rs.count(weyl_apply(w, a)));
  }
}

TEST(RootData, InvariantFormIsWeylInvariant) {
  std::mt19937_64 rng(5);
  const auto W = weyl_group(3);
  std::uniform_int_distribution<size_t> pick(0, W.size() - 1);
  for (int it = 0; it < 200; ++it) {
    const auto& w = W[pick(rng)];
    const Character a = random_pgsp_character(rng, 3), b = random_pgsp_character(rng, 3);
    EXPECT_EQ(weyl_form(weyl_apply(w, a), weyl_apply(w, b)), weyl_form(a, b));
  }
}

TEST(RootData, DominantRepOfTransposedPair) {
  for (long tau = 0; tau <= 6; ++tau)
    for (long t = 0; 2 * t <= tau; ++t) {
      const auto [d, w] = dominant_rep(Coweight({tau, t, 0}));
      EXPECT_EQ(d, Coweight({tau, 0, t}));
      EXPECT_EQ(weyl_apply(w, Coweight({tau, t, 0})), d);
    }
}

TEST(RootData, DominantInputUnchanged) {
  for (const auto& lam : dominant_coweights(2, 6)) {
    const auto [d, w] = dominant_rep(lam);
    EXPECT_EQ(d, lam);
    EXPECT_EQ(weyl_apply(w, lam), lam);
  }
}

TEST(RootData, DominantRepMatchesOrbitSearch) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const auto W = weyl_group(n);
    for (int it = 0; it < 60; ++it) {
      const Coweight lam(random_vec(rng, n + 1, -5, 5));
      std::set<Coweight> dominant_in_orbit;
      for (const auto& w : W) {
        const auto img = weyl_apply(w, lam);
        const auto& l = img.ell();
        bool dom = true;
        for (int i = 1; i < n; ++i) dom = dom && l[i] <= l[i + 1];
        dom = dom && 2 * l[n] <= l[0];
        if (dom) dominant_in_orbit.insert(img);
      }
      ASSERT_EQ(dominant_in_orbit.size(), 1u);
      const auto [d, w] = dominant_rep(lam);
      EXPECT_EQ(d, *dominant_in_orbit.begin());
      EXPECT_EQ(weyl_apply(w, lam), d);
    }
  }
}

TEST(RootData, DominantRepIdempotentAndOrbitStable) {
  std::mt19937_64 rng(17);
  const auto W = weyl_group(2);
  for (int it = 0; it < 100; ++it) {
    const Coweight lam(random_vec(rng, 3, -6, 6));
    const Coweight d = dominant_rep(lam).first;
    EXPECT_EQ(dominant_rep(d).first, d);
    for (const auto& w : W) EXPECT_EQ(dominant_rep(weyl_apply(w, lam)).first, d);
  }
}

TEST(RootData, LeqReflexiveAndAntisymmetric) {
  const auto lams = dominant_coweights(2, 6);
  for (const auto& a : lams) {
    EXPECT_TRUE(leq(a, a));
    for (const auto& b : lams)
      if (leq(a, b) && leq(b, a)) EXPECT_EQ(a, b);
  }
}

TEST(RootData, LeqMatchesCorootSearch) {
  const auto lams = dominant_coweights(2, 6);
  for (const auto& mu : lams)
    for (const auto& lam : lams) {
      const auto a = lam.two_nu(), b = mu.two_nu();
      bool expect = true;
      std::vector<long> diff(2);
      for (int i = 0; i < 2; ++i) {
        if ((a[i] - b[i]) % 2 != 0) expect = false;
        diff[i] = (a[i] - b[i]) / 2;
      }
      if (expect) expect = oracle::coroot_cone_box(diff);
      EXPECT_EQ(leq(mu, lam), expect) << mu.str() << " <= " << lam.str();
    }
}

TEST(RootData, CanonicalRepresentative) {
  // (5, 2, 3) ~ (5, 2, 3) - 2 (2, 1, 1) = (1, 0, 1)
  EXPECT_EQ(Coweight({5, 2, 3}).ell(), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(Coweight::from_two_nu(Coweight({6, 0, 2}).two_nu()), Coweight({6, 0, 2}));
  EXPECT_THROW(Coweight::from_two_nu({1, 2}), std::invalid_argument);
}

TEST(RootData, DominantEnumerationSatisfiesChamberCondition) {
  const auto lams = dominant_coweights(2, 6);
  size_t expect = 0;
  for (long l0 = 0; l0 <= 6; ++l0) expect += static_cast<size_t>(l0 / 2 + 1);
  EXPECT_EQ(lams.size(), expect);
  for (const auto& l : lams) EXPECT_TRUE(is_dominant(l));
}
