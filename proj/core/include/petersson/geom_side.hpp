#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "petersson/forms.hpp"
#include "petersson/intmat.hpp"
#include "petersson/local_gsp4.hpp"
#include "petersson/root_data.hpp"

namespace petersson {

struct PrimeSpec {
  long p = 3;
  Coweight lam;  // dominant, l0 = r_p
  long r_p() const { return lam.ell0(); }
};

struct SimilitudeSpec {
  std::vector<PrimeSpec> primes;
  // r = prod p^{r_p}.
  Int r() const;
  void validate() const;
};

// First nonzero entry positive.
IntMat sign_normalize(const IntMat& A);

// All A in M_n(Z) mod +-1 with tA sigma1 A = r sigma2 and r tA^{-1} integral,
// sign-normalised and sorted.
std::vector<IntMat> enumerate_A(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, const Int& r);

// Per-coordinate bound |v_i| <= floor(sqrt(T (S^{-1})_ii)) for integer
// vectors with tv S v = T, S = 2 sigma.
std::vector<long> coordinate_bounds(const HalfIntegralSymMat& sigma, const Int& two_q_target);

// Solution-set involution A -> sign-normalised r A^{-1}.
IntMat involution(const IntMat& A, const Int& r);

// Closed form of the archimedean factor, in extended precision. needs kappa > 2n.
long double arch_factor(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, int kappa);
long double log_arch_factor(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, int kappa);
// log Gamma_n(a) = n(n-1)/4 log pi + sum_j log Gamma(a - (j-1)/2).
long double log_gamma_n(int n, long double a);

struct ArchQuadratureOptions {
  double half_width = 40.0;      // box [-L, L]^3 in (x, y, z)
  double skip_threshold = 1e-12; // cells below this fraction of the peak are skipped
};

struct ArchQuadratureResult {
  std::complex<double> value;
  double abs_integral = 0;  // integral of the modulus (conditioning)
  long cells_used = 0;
  long cells_skipped = 0;
};

// Direct cubature of the archimedean integral over S_2(R) for a given A,
// 10-point Gauss-Legendre per edge on cells of width 1 / max|coefficient|.
ArchQuadratureResult arch_factor_quadrature_n2(const HalfIntegralSymMat& sigma1, const IntMat& A, const Int& r,
                                               int kappa, const ArchQuadratureOptions& opt = {});

// sgn(det A)^kappa: the archimedean factor of A is this sign times arch_factor.
int arch_sign(const IntMat& A, int kappa);

struct GeomTerm {
  IntMat A;
  long double arch = 0;  // signed archimedean factor
  std::vector<std::pair<long, LocalIntegralValue>> locals;
  Rat local_product = 1;
};

struct GeomResult {
  std::vector<GeomTerm> terms;
  long double total = 0;
  Int r;
};

// Local factor at one prime for one A.
LocalIntegralValue local_factor(const IntMat& A, const HalfIntegralSymMat& sigma1, const PrimeSpec& ps);

GeomResult geometric_side(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2,
                          const SimilitudeSpec& spec, int kappa);

// (sum_A s_A prod_p I_{A,p}) / n_1 with s_A = sgn(det A)^kappa, A over the
// solutions for r, and n_1 the signed count of solutions for r = 1. The
// archimedean factor cancels and is not evaluated.
Rat normalized_L(const HalfIntegralSymMat& sigma, const SimilitudeSpec& spec, int kappa);

}  // namespace petersson
