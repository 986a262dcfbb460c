#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "petersson/arith.hpp"

namespace petersson {

// Character of the diagonal torus of GSp(2n): chi(t) = r^{k0} a1^{k1} ... an^{kn}.
struct Character {
  std::vector<long> k;
  Character() = default;
  explicit Character(std::vector<long> kk) : k(std::move(kk)) {}
  int n() const { return static_cast<int>(k.size()) - 1; }
  // Trivial on the centre, i.e. a character of PGSp(2n).
  bool is_pgsp() const;
  auto operator<=>(const Character&) const = default;
};

// A character with possibly half-integral coordinates, stored doubled.
struct HalfWeight {
  std::vector<long> two_chi;
  HalfWeight() = default;
  explicit HalfWeight(std::vector<long> t) : two_chi(std::move(t)) {}
  int n() const { return static_cast<int>(two_chi.size()) - 1; }
  auto operator<=>(const HalfWeight&) const = default;
};

// Cocharacter of PGSp(2n), i.e. a coset of Z^{n+1} modulo (2,1,...,1).
// Always held as the representative with l1 = 0.
class Coweight {
 public:
  Coweight() = default;
  explicit Coweight(std::vector<long> raw);
  static Coweight zero(int n) { return Coweight(std::vector<long>(n + 1, 0)); }
  // Inverse of two_nu(); all entries must share the parity of the first.
  static Coweight from_two_nu(const std::vector<long>& tn);

  const std::vector<long>& ell() const { return ell_; }
  long ell0() const { return ell_[0]; }
  long operator[](int i) const { return ell_[i]; }
  int n() const { return static_cast<int>(ell_.size()) - 1; }

  // Doubled coordinates 2 nu_i = l0 - 2 l_i (i = 1..n). These are the
  // orthonormal coordinates of the B_n weight lattice of the dual group,
  // in which the Weyl group acts by signed permutations.
  std::vector<long> two_nu() const;

  bool is_zero() const;
  std::string str() const;
  auto operator<=>(const Coweight&) const = default;

 private:
  std::vector<long> ell_;
};

class WeylElement {
 public:
  WeylElement() = default;
  // On nu-coordinates: (w nu)[perm[i]] = (signs[i] ? -1 : 1) * nu[i].
  WeylElement(std::vector<int> perm, std::vector<bool> signs);
  static WeylElement identity(int n);
  // Generator of the sign-flip type at index i (1-based, as in the coordinates).
  static WeylElement sign_flip(int n, int i);
  static WeylElement permutation(std::vector<int> perm);

  int n() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<bool>& signs() const { return signs_; }
  int sign() const;  // determinant of the signed permutation
  WeylElement compose(const WeylElement& inner) const;  // this o inner
  WeylElement inverse() const;
  std::vector<long> act_nu(const std::vector<long>& nu) const;
  auto operator<=>(const WeylElement&) const = default;
  std::string str() const;

 private:
  std::vector<int> perm_;
  std::vector<bool> signs_;
};

Rat pair(const Character& chi, const Coweight& lam);
Rat pair(const HalfWeight& chi, const Coweight& lam);
// Pairing on raw Z^{n+1} representatives, without normalisation.
Rat pair_raw(const std::vector<long>& k, const std::vector<long>& ell, bool halved = false);

// W-invariant form (chi, chi') = sum_{i>=1} k_i k'_i.
long weyl_form(const Character& a, const Character& b);

Character weyl_apply(const WeylElement& w, const Character& chi);
HalfWeight weyl_apply(const WeylElement& w, const HalfWeight& chi);
Coweight weyl_apply(const WeylElement& w, const Coweight& lam);

bool is_dominant(const Coweight& lam);
// Returns (dominant representative, w) with weyl_apply(w, lam) == dominant.
std::pair<Coweight, WeylElement> dominant_rep(const Coweight& lam);
// mu <= lam: lam - mu is a nonnegative integer combination of positive coroots.
bool leq(const Coweight& mu, const Coweight& lam);

std::vector<Character> roots(int n);
std::vector<Character> positive_roots(int n);
std::vector<Character> simple_roots(int n);
Coweight coroot(const Character& alpha);
std::vector<Coweight> positive_coroots(int n);
// Positive coroots written in (integral) nu-coordinates.
std::vector<std::vector<long>> positive_coroots_nu(int n);

HalfWeight rho(int n);
Coweight rho_vee(int n);
std::vector<long> relation_vector(int n);  // (2,1,...,1)
std::vector<WeylElement> weyl_group(int n);

// Counts N_m of expressions nu = sum n(a) a over positive coroots a with
// sum n(a) = m; index m of the result. Empty when nu lies outside the cone
// or is not integral. nu_diff is in integral nu-coordinates.
std::vector<Int> coroot_expression_counts(const std::vector<long>& nu_diff);

// <rho, lam> as a rational.
Rat rho_pair(const Coweight& lam);

// All dominant coweights with l0 <= max_l0.
std::vector<Coweight> dominant_coweights(int n, long max_l0);

}  // namespace petersson
