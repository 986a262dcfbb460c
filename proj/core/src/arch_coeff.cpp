#include "petersson/arch_coeff.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace petersson {

RMat real_symplectic_J(int n) {
  RMat J = RMat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = RMat::Identity(n, n);
  J.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return J;
}

GspRealElement GspRealElement::from_matrix(RMat M, double tol) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
    throw std::invalid_argument("GSp element must be 2n x 2n");
  const int n = static_cast<int>(M.rows()) / 2;
  const RMat J = real_symplectic_J(n);
  const RMat S = M.transpose() * J * M;
  const double r = S(0, n);
  if (r == 0.0) throw std::invalid_argument("not a similitude: r(g) = 0");
  const double err = (S - r * J).norm();
  if (err > tol * std::max(1.0, std::abs(r)) * std::max(1.0, M.squaredNorm()))
    throw std::invalid_argument("matrix is not a similitude within tolerance");
  GspRealElement g;
  g.m_ = std::move(M);
  g.r_ = r;
  return g;
}

void validate(const CoeffParams& p) {
  if (p.n < 1) throw std::invalid_argument("n must be >= 1");
  if (p.kappa <= p.n) throw std::invalid_argument("need kappa > n for a discrete series");
}

namespace {

void check_n(const GspRealElement& g, const CoeffParams& p) {
  validate(p);
  if (g.n() != p.n) throw std::invalid_argument("rank mismatch between element and parameters");
}

}  // namespace

cplx matrix_coeff(const GspRealElement& g, const CoeffParams& p) {
  check_n(g, p);
  if (g.r() < 0) return 0.0;
  const CMat M = (g.A() + g.D()).cast<cplx>() + cplx(0, 1) * (g.B() - g.C()).cast<cplx>();
  const cplx d = M.determinant();
  const double nk = static_cast<double>(p.n) * p.kappa;
  return std::pow(g.r(), nk / 2) * std::pow(2.0, nk) / std::pow(d, p.kappa);
}

double matrix_coeff_abs(const GspRealElement& g, const CoeffParams& p) {
  check_n(g, p);
  if (g.r() <= 0) throw std::invalid_argument("matrix_coeff_abs needs r(g) > 0");
  const RMat A = g.A(), B = g.B(), C = g.C(), D = g.D();
  const RMat re = 2 * g.r() * RMat::Identity(p.n, p.n) + A * A.transpose() + B * B.transpose() +
                  C * C.transpose() + D * D.transpose();
  const RMat im = A * C.transpose() - C * A.transpose() + B * D.transpose() - D * B.transpose();
  const CMat H = re.cast<cplx>() + cplx(0, 1) * im.cast<cplx>();
  const double det = H.determinant().real();
  const double nk = static_cast<double>(p.n) * p.kappa;
  return std::pow(g.r(), nk / 2) * std::pow(2.0, nk) / std::pow(det, p.kappa / 2.0);
}

DegenValue degen_abs_n2(const GspRealElement& g, int kappa) {
  if (g.n() != 2) throw std::invalid_argument("degen_abs_n2 needs n = 2");
  if (g.r() <= 0) throw std::invalid_argument("degen_abs_n2 needs r(g) > 0");
  using B2 = std::array<std::array<double, 2>, 2>;
  auto blk = [](const RMat& M) { return B2{{{M(0, 0), M(0, 1)}, {M(1, 0), M(1, 1)}}}; };
  const auto X = degen_X<double>(blk(g.A()), blk(g.B()), blk(g.C()), blk(g.D()));
  const double r = g.r(), sq = g.matrix().squaredNorm();
  double tail = 0;
  for (int i = 2; i < 8; ++i) tail += X[i] * X[i];
  DegenValue v;
  v.exact = std::pow(r, kappa) * std::pow(4.0, kappa) / std::pow(4 * r * r + 2 * r * sq + tail, kappa / 2.0);
  v.upper_bound = std::pow(8 * r, kappa / 2.0) / std::pow(2 * r + sq, kappa / 2.0);
  return v;
}

Rat formal_degree_normalization(int n) {
  Int den = ipow(2, static_cast<unsigned long>(n * (n + 1)));
  for (int j = 1; j <= n; ++j) {
    Int f = 1;
    for (int i = 2; i <= j; ++i) f *= i;
    den *= f;
  }
  return Rat(Int(1), den);
}

Rat formal_degree(int kappa, int n) { return formal_degree(kappa, n, formal_degree_normalization(n)); }

Rat formal_degree(int kappa, int n, const Rat& a) {
  if (kappa <= 2 * n) throw std::invalid_argument("formal degree needs kappa > 2n");
  Rat d = a;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) d *= 2 * kappa - (i + j);
  return d;
}

Rat lp_norm_closed(int kappa, int ell, int n) {
  const long k = static_cast<long>(kappa) * ell;
  if (ell <= 0 || k <= 2 * n) throw std::domain_error("|f_kappa|^ell is not integrable: need ell kappa > 2n");
  Rat v = Rat(Int(1), Int(1)) / formal_degree_normalization(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) v /= Rat(k - (i + j));
  return v;
}

double lp_norm_quadrature_n2(double kappa, double ell, double tol) {
  const double k = kappa * ell;
  if (!(ell > 0) || k <= 4) throw std::domain_error("|f_kappa|^ell is not integrable: need ell kappa > 4");
  // u = 4 / s maps [4, inf)^2 onto (0, 1]^2; by symmetry integrate over s1 < s2 twice.
  const double e = k / 2 - 3;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto outer = [&](double s2) {
    auto inner = [&](double s1) { return std::pow(s1 * s2, e) * (s2 - s1); };
    return GK::integrate(inner, 0.0, s2, 15, tol);
  };
  return 32.0 * GK::integrate(outer, 0.0, 1.0, 15, tol);
}

std::pair<Rat, Rat> lemma_sn_sides(const std::vector<Rat>& b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) throw std::invalid_argument("lemma_sn_sides needs n >= 1");
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rat lhs = 0;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Rat den = 1, partial = 0;
    for (int i = 0; i < n; ++i) {
      partial += b[perm[i]];
      if (partial == 0) throw std::domain_error("pole: vanishing partial sum");
      den *= partial;
    }
    lhs += Rat(inv % 2 ? -1 : 1) / den;
  } while (std::next_permutation(perm.begin(), perm.end()));
  Rat num = ipow(2, static_cast<unsigned long>(n)), den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (j > i) num *= b[j] - b[i];
      const Rat s = b[i] + b[j];
      if (s == 0) throw std::domain_error("pole: b_i + b_j = 0");
      den *= s;
    }
  return {lhs, num / den};
}

HCDecomposition hc_decompose(const GspRealElement& g) {
  if (g.r() <= 0) throw std::invalid_argument("hc_decompose needs r(g) > 0");
  const int n = g.n();
  const double s = 1.0 / std::sqrt(g.r());
  const cplx I(0, 1);
  const CMat A = (s * g.A()).cast<cplx>(), B = (s * g.B()).cast<cplx>();
  const CMat C = (s * g.C()).cast<cplx>(), D = (s * g.D()).cast<cplx>();
  HCDecomposition h;
  h.gprime.resize(2 * n, 2 * n);
  const CMat alpha = 0.5 * ((A + D) + I * (B - C));
  const CMat beta = 0.5 * ((B + C) + I * (A - D));
  h.gprime << alpha, beta, 0.5 * ((B + C) - I * (A - D)), 0.5 * ((A + D) - I * (B - C));
  Eigen::FullPivLU<CMat> lu(alpha);
  if (!lu.isInvertible()) throw std::domain_error("alpha is singular");
  const CMat ainv = lu.inverse();
  const CMat Id = CMat::Identity(n, n), Z = CMat::Zero(n, n);
  h.lower.resize(2 * n, 2 * n);
  h.middle.resize(2 * n, 2 * n);
  h.upper.resize(2 * n, 2 * n);
  h.lower << Id, Z, beta.conjugate() * ainv, Id;
  h.middle << alpha, Z, Z, ainv.transpose();
  h.upper << Id, ainv * beta, Z, Id;
  return h;
}

cplx matrix_coeff_via_hc(const GspRealElement& g, const CoeffParams& p) {
  check_n(g, p);
  if (g.r() < 0) return 0.0;
  const HCDecomposition h = hc_decompose(g);
  const CMat alpha = h.middle.topLeftCorner(p.n, p.n);
  const cplx d = alpha.conjugate().transpose().determinant();
  return std::conj(std::pow(d, -p.kappa));
}

bool integrability_predicate(int kappa, int n) {
  if (kappa <= n) throw std::invalid_argument("need kappa > n");
  return kappa > 2 * n;
}

bool tvhs_integrable(int kappa, int n) {
  if (kappa <= n) throw std::invalid_argument("need kappa > n");
  using V = std::vector<long>;
  auto unit = [n](int i) {
    V v(static_cast<size_t>(n), 0);
    v[i] = 1;
    return v;
  };
  auto add = [](V a, const V& b, long s) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
  };
  auto ip = [](const V& a, const V& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0L); };
  std::vector<V> pos, nc;
  for (int j = 0; j < n; ++j) {
    pos.push_back(add(V(n, 0), unit(j), 2));
    nc.push_back(pos.back());
    for (int k = j + 1; k < n; ++k) {
      pos.push_back(add(unit(j), unit(k), 1));
      nc.push_back(pos.back());
      pos.push_back(add(unit(k), unit(j), -1));
    }
  }
  V lam(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) lam[j] = (j + 1) - kappa;
  for (const V& b : nc) {
    long rhs = 0;
    for (const V& a : pos) rhs += std::labs(ip(a, b));
    if (2 * std::labs(ip(lam, b)) <= rhs) return false;
  }
  return true;
}

int central_character_sign(double z, int kappa, int n) {
  if (z == 0) throw std::invalid_argument("central element must be nonzero");
  if (z > 0) return 1;
  return (static_cast<long>(n) * kappa) % 2 == 0 ? 1 : -1;
}

GspRealElement random_gsp(int n, std::mt19937_64& rng, double scale, bool negative) {
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  RMat a(n, n), b(n, n), c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = N(rng);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      b(i, j) = b(j, i) = N(rng);
      c(i, j) = c(j, i) = N(rng);
    }
  RMat X(2 * n, 2 * n);
  X << a, b, c, -a.transpose();
  X *= scale * U(rng) / X.norm();
  RMat M = X.exp();
  const double s = std::exp(std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
  M *= std::sqrt(s);
  if (negative) M.rightCols(n) *= -1.0;
  return GspRealElement::from_matrix(std::move(M));
}

RMat random_compact(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  RMat x = RMat::Zero(n, n), y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      y(i, j) = y(j, i) = N(rng);
      if (j > i) {
        x(i, j) = N(rng);
        x(j, i) = -x(i, j);
      }
    }
  RMat X(2 * n, 2 * n);
  X << x, y, -y, x;
  return X.exp();
}

}  // namespace petersson
