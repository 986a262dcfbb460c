#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "petersson/arith.hpp"

namespace petersson {

using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Element M = (A B; C D) of GSp(2n, R) with tM J M = r J.
class GspRealElement {
 public:
  // Throws invalid_argument unless M is a similitude to 1e-10 relative.
  static GspRealElement from_matrix(RMat M, double tol = 1e-10);

  int n() const { return static_cast<int>(m_.rows()) / 2; }
  const RMat& matrix() const { return m_; }
  double r() const { return r_; }
  RMat A() const { return m_.topLeftCorner(n(), n()); }
  RMat B() const { return m_.topRightCorner(n(), n()); }
  RMat C() const { return m_.bottomLeftCorner(n(), n()); }
  RMat D() const { return m_.bottomRightCorner(n(), n()); }

 private:
  RMat m_;
  double r_ = 1.0;
};

RMat real_symplectic_J(int n);

struct CoeffParams {
  int n = 2;
  int kappa = 10;
};
// kappa > n (discrete series); throws invalid_argument otherwise.
void validate(const CoeffParams& p);

// f_kappa(g); zero when r(g) < 0.
cplx matrix_coeff(const GspRealElement& g, const CoeffParams& p);
// |f_kappa(g)| through the Hermitian determinant form; needs r(g) > 0.
double matrix_coeff_abs(const GspRealElement& g, const CoeffParams& p);

// Bilinear forms X_1..X_8 in the entries of the first and second rows of
// (A B; C D) for n = 2; sum X_i^2 equals the product of the two row sums.
template <class T>
std::array<T, 8> degen_X(const std::array<std::array<T, 2>, 2>& A, const std::array<std::array<T, 2>, 2>& B,
                         const std::array<std::array<T, 2>, 2>& C, const std::array<std::array<T, 2>, 2>& D) {
  const T &A11 = A[0][0], &A12 = A[0][1], &A21 = A[1][0], &A22 = A[1][1];
  const T &B11 = B[0][0], &B12 = B[0][1], &B21 = B[1][0], &B22 = B[1][1];
  const T &C11 = C[0][0], &C12 = C[0][1], &C21 = C[1][0], &C22 = C[1][1];
  const T &D11 = D[0][0], &D12 = D[0][1], &D21 = D[1][0], &D22 = D[1][1];
  return {
      T(A11 * A21 + A12 * A22 + B11 * B21 + B12 * B22 + C11 * C21 + C12 * C22 + D11 * D21 + D12 * D22),
      T(A11 * C21 + A12 * C22 + B11 * D21 + B12 * D22 - C11 * A21 - C12 * A22 - D11 * B21 - D12 * B22),
      T(A11 * A22 - A12 * A21 + B11 * D22 - B12 * D21 - C11 * C22 + C12 * C21 - D12 * B21 + D11 * B22),
      T(A11 * C22 - A12 * C21 + B11 * B22 - B12 * B21 - C12 * A21 + C11 * A22 - D11 * D22 + D12 * D21),
      T(A11 * B21 - A12 * D22 - B11 * A21 + B12 * C22 - C11 * D21 - C12 * B22 + D12 * A22 + D11 * C21),
      T(A11 * D21 - A12 * B22 - B11 * C21 + B12 * A22 + C11 * B21 + C12 * D22 - D11 * A21 - D12 * C22),
      T(A11 * D22 + A12 * B21 - B11 * A22 - B12 * C21 + C11 * B22 - C12 * D21 + D11 * C22 - D12 * A21),
      T(A11 * B22 + A12 * D21 - B11 * C22 - B12 * A21 - C11 * D22 + C12 * B21 - D11 * A22 + C21 * D12),
  };
}

struct DegenValue {
  double exact = 0;
  double upper_bound = 0;
};
DegenValue degen_abs_n2(const GspRealElement& g, int kappa);

// Default constant a in d_kappa = a prod (2 kappa - (i + j)): (2^{n(n+1)} prod j!)^{-1}.
Rat formal_degree_normalization(int n);
Rat formal_degree(int kappa, int n);
Rat formal_degree(int kappa, int n, const Rat& a);

// Integral of |f_kappa|^ell; requires ell kappa > 2n.
Rat lp_norm_closed(int kappa, int ell, int n);
double lp_norm_quadrature_n2(double kappa, double ell, double tol = 1e-11);

// Both sides of the alternating-sum identity over S_n; throws on any pole.
std::pair<Rat, Rat> lemma_sn_sides(const std::vector<Rat>& b);

struct HCDecomposition {
  CMat gprime;  // tau^{-1} h tau with h = r^{-1/2} g
  CMat lower;   // (I 0; conj(beta) alpha^{-1} I)
  CMat middle;  // diag(alpha, t alpha^{-1})
  CMat upper;   // (I alpha^{-1} beta; 0 I)
};
HCDecomposition hc_decompose(const GspRealElement& g);
// conj(det(t conj(alpha))^{-kappa}) from the middle factor; alpha already carries r^{-1/2}.
cplx matrix_coeff_via_hc(const GspRealElement& g, const CoeffParams& p);

// kappa > 2n.
bool integrability_predicate(int kappa, int n);
// The inequality 2 |<lambda, b>| > sum_{a > 0} |<a, b>| over noncompact roots b,
// with lambda = sum_j (j - kappa) e_j.
bool tvhs_integrable(int kappa, int n);
int central_character_sign(double z, int kappa, int n);

// exp of a random element of sp(2n, R) with norm <= scale, times the central
// scalar sqrt(s); for negative = true the result is further multiplied by
// diag(I, -I), so r < 0.
GspRealElement random_gsp(int n, std::mt19937_64& rng, double scale = 2.0, bool negative = false);
// Random element (X Y; -Y X) of the maximal compact subgroup.
RMat random_compact(int n, std::mt19937_64& rng);

}  // namespace petersson
