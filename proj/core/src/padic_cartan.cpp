#include "petersson/padic_cartan.hpp"

#include <random>
#include <stdexcept>

namespace petersson {

namespace {

// Tracks A_orig = U * A * V while A is reduced in place.
struct SnfState {
  IntMat A, U, V;
  int n;

  void swap_rows(int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(A(i, c), A(j, c));
    for (int r = 0; r < n; ++r) std::swap(U(r, i), U(r, j));
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(A(r, i), A(r, j));
    for (int c = 0; c < n; ++c) std::swap(V(i, c), V(j, c));
  }
  // row_i += q * row_j
  void add_row(int i, int j, const Int& q) {
    for (int c = 0; c < n; ++c) A(i, c) += q * A(j, c);
    for (int r = 0; r < n; ++r) U(r, j) -= q * U(r, i);
  }
  // col_j += q * col_i
  void add_col(int j, int i, const Int& q) {
    for (int r = 0; r < n; ++r) A(r, j) += q * A(r, i);
    for (int c = 0; c < n; ++c) V(i, c) -= q * V(j, c);
  }
  void negate_row(int i) {
    for (int c = 0; c < n; ++c) A(i, c) = -A(i, c);
    for (int r = 0; r < n; ++r) U(r, i) = -U(r, i);
  }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMat& A) {
  if (!A.square()) throw std::invalid_argument("smith_normal_form needs a square matrix");
  if (A.det() == 0) throw std::invalid_argument("smith_normal_form needs a nonsingular matrix");
  const int n = A.rows();
  SnfState s{A, IntMat::identity(n), IntMat::identity(n), n};
  for (int k = 0; k < n; ++k) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (s.A(i, j) != 0 && (pi < 0 || abs(s.A(i, j)) < abs(s.A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi != k) s.swap_rows(pi, k);
      if (pj != k) s.swap_cols(pj, k);
      bool clean = true;
      for (int i = k + 1; i < n; ++i) {
        if (s.A(i, k) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(i, k).get_mpz_t(), s.A(k, k).get_mpz_t());
        s.add_row(i, k, -q);
        if (s.A(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < n; ++j) {
        if (s.A(k, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.A(k, j).get_mpz_t(), s.A(k, k).get_mpz_t());
        s.add_col(j, k, -q);
        if (s.A(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = k + 1; i < n && bad < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (!mpz_divisible_p(s.A(i, j).get_mpz_t(), s.A(k, k).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      s.add_row(k, bad, Int(1));
    }
    if (s.A(k, k) < 0) s.negate_row(k);
  }
  return {s.U, s.A, s.V};
}

Valuation minor_valuation(const PMatrix& g, int m, long p) {
  const IntMat& a = g.num;
  const int R = a.rows(), C = a.cols();
  if (m < 1 || m > std::min(R, C)) throw std::invalid_argument("minor size out of range");
  std::vector<int> rows(m), cols(m);
  Valuation best = Valuation::infinity();
  // iterate over combinations of row and column index sets
  std::vector<int> ri(m);
  for (int i = 0; i < m; ++i) ri[i] = i;
  for (;;) {
    std::vector<int> ci(m);
    for (int i = 0; i < m; ++i) ci[i] = i;
    for (;;) {
      Valuation v = valuation(a.minor(ri, ci), p);
      if (v < best) best = v;
      if (!best.is_infinite() && best.value() == 0) return best - m * g.den_exp;
      int i = m - 1;
      while (i >= 0 && ci[i] == C - m + i) --i;
      if (i < 0) break;
      ++ci[i];
      for (int j = i + 1; j < m; ++j) ci[j] = ci[j - 1] + 1;
    }
    int i = m - 1;
    while (i >= 0 && ri[i] == R - m + i) --i;
    if (i < 0) break;
    ++ri[i];
    for (int j = i + 1; j < m; ++j) ri[j] = ri[j - 1] + 1;
  }
  return best - m * g.den_exp;
}

std::optional<Int> similitude(const IntMat& g) {
  if (!g.square() || g.rows() % 2 != 0) return std::nullopt;
  const int n = g.rows() / 2;
  const IntMat J = symplectic_J(n);
  const IntMat M = g.transpose() * J * g;
  const Int r = M(0, n);
  if (!(M == J.scaled(r))) return std::nullopt;
  return r;
}

CosetLabel classify_coset(const PMatrix& g, long p) {
  if (!is_prime(p)) throw std::invalid_argument("classify_coset needs a prime");
  auto r = similitude(g.num);
  if (!r) throw std::invalid_argument("matrix is not a symplectic similitude");
  if (*r == 0) throw std::invalid_argument("similitude factor is zero");
  const int n = g.num.rows() / 2;
  // r(num) = r(g) p^{2 den_exp}; any nonzero rational is p^k times a p-adic unit.
  const long l0 = pval(*r, p) - 2 * g.den_exp;
  std::vector<long> raw(n + 1);
  raw[0] = l0;
  long prev = 0;
  for (int m = 1; m <= n; ++m) {
    const Valuation v = minor_valuation(g, m, p);
    if (v.is_infinite()) throw std::logic_error("vanishing minors on an invertible matrix");
    raw[m] = v.value() - prev;
    prev = v.value();
  }
  for (int i = 1; i < n; ++i)
    if (raw[i] > raw[i + 1]) throw std::logic_error("minor quotients not increasing");
  if (2 * raw[n] > raw[0]) throw std::logic_error("minor quotients exceed l0/2");
  return {Coweight(raw), l0, raw};
}

IntMat lambda_matrix(const Coweight& lam, long p) {
  const int n = lam.n();
  std::vector<Int> d(2 * n);
  for (int i = 1; i <= n; ++i) {
    d[i - 1] = ipow(p, static_cast<unsigned long>(lam[i]));
    d[n + i - 1] = ipow(p, static_cast<unsigned long>(lam.ell0() - lam[i]));
  }
  return IntMat::diag(d);
}

IntMat random_integral_symplectic(int n, std::uint64_t seed, int word_length) {
  std::mt19937_64 rng(seed);
  IntMat g = IntMat::identity(2 * n);
  std::uniform_int_distribution<int> kind(0, 3), idx(0, n - 1), sgn(0, 1);
  for (int step = 0; step < word_length; ++step) {
    IntMat e = IntMat::identity(2 * n);
    const int i = idx(rng), j = idx(rng);
    const long s = sgn(rng) ? 1 : -1;
    switch (kind(rng)) {
      case 0:  // (I S; 0 I)
        e(i, n + j) += s;
        if (i != j) e(j, n + i) += s;
        break;
      case 1:  // (I 0; S I)
        e(n + i, j) += s;
        if (i != j) e(n + j, i) += s;
        break;
      case 2:  // (U 0; 0 tU^{-1}) with U = I + s E_ij
        if (i != j) {
          e(i, j) += s;
          e(n + j, n + i) -= s;
        }
        break;
      default:
        e = symplectic_J(n);
        break;
    }
    g = g * e;
  }
  return g;
}

}  // namespace petersson
