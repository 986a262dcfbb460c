#include "petersson/geom_side.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

#include "petersson/arch_coeff.hpp"

namespace petersson {

Int SimilitudeSpec::r() const {
  Int r = 1;
  for (const auto& ps : primes) r *= ipow(ps.p, static_cast<unsigned long>(ps.r_p()));
  return r;
}

void SimilitudeSpec::validate() const {
  std::set<long> seen;
  for (const auto& ps : primes) {
    if (!is_prime(ps.p)) throw std::invalid_argument("similitude spec contains a non-prime");
    if (!seen.insert(ps.p).second) throw std::invalid_argument("similitude spec repeats a prime");
    if (!is_dominant(ps.lam)) throw std::invalid_argument("lambda_p must be dominant");
  }
}

IntMat sign_normalize(const IntMat& A) {
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0) return A(i, j) < 0 ? A.scaled(-1) : A;
  return A;
}

std::vector<long> coordinate_bounds(const HalfIntegralSymMat& sigma, const Int& T) {
  const IntMat& S = sigma.two_sigma();
  const IntMat adj = S.adjugate();
  const Int det = S.det();
  std::vector<long> b(static_cast<size_t>(S.rows()));
  for (int i = 0; i < S.rows(); ++i) {
    Int q = T * adj(i, i) / det;  // floor, all terms nonnegative
    Int s = sqrt(q);
    b[i] = s.get_si();
  }
  return b;
}

namespace {

// Integer vectors v with tv S v = T, |v_i| <= bound_i.
std::vector<std::vector<Int>> vectors_of_norm(const HalfIntegralSymMat& sigma, const Int& T) {
  const int n = sigma.n();
  const auto bound = coordinate_bounds(sigma, T);
  std::vector<std::vector<Int>> out;
  std::vector<Int> v(static_cast<size_t>(n));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (sigma.two_q(v) == T) out.push_back(v);
      return;
    }
    for (long x = -bound[i]; x <= bound[i]; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

Int bilinear(const IntMat& S, const std::vector<Int>& u, const std::vector<Int>& v) {
  Int s = 0;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) s += u[i] * S(static_cast<int>(i), static_cast<int>(j)) * v[j];
  return s;
}

}  // namespace

std::vector<IntMat> enumerate_A(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, const Int& r) {
  const int n = sigma1.n();
  if (sigma2.n() != n) throw std::invalid_argument("sigma1 and sigma2 must have the same size");
  if (r <= 0) throw std::invalid_argument("r must be positive");
  const IntMat& S1 = sigma1.two_sigma();
  const IntMat& S2 = sigma2.two_sigma();
  std::vector<std::vector<std::vector<Int>>> cols(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) cols[j] = vectors_of_norm(sigma1, r * S2(j, j));
  std::set<std::string> seen;
  std::vector<IntMat> out;
  std::vector<const std::vector<Int>*> pick(static_cast<size_t>(n));
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      IntMat A(n, n);
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i) A(i, c) = (*pick[c])[i];
      const Int det = A.det();
      if (det == 0) return;
      const IntMat adj = A.adjugate();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (!mpz_divisible_p(Int(r * adj(a, b)).get_mpz_t(), det.get_mpz_t())) return;
      IntMat N = sign_normalize(A);
      if (seen.insert(N.str()).second) out.push_back(std::move(N));
      return;
    }
    for (const auto& v : cols[j]) {
      bool ok = true;
      for (int c = 0; c < j && ok; ++c) ok = bilinear(S1, *pick[c], v) == r * S2(c, j);
      if (!ok) continue;
      pick[j] = &v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const IntMat& a, const IntMat& b) { return a.str() < b.str(); });
  return out;
}

IntMat involution(const IntMat& A, const Int& r) {
  const Int det = A.det();
  if (det == 0) throw std::invalid_argument("singular A");
  IntMat adj = A.adjugate();
  IntMat B(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const Int num = r * adj(i, j);
      if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) throw std::invalid_argument("r A^{-1} is not integral");
      B(i, j) = num / det;
    }
  return sign_normalize(B);
}

long double log_gamma_n(int n, long double a) {
  long double s = n * (n - 1) / 4.0L * std::log(std::numbers::pi_v<long double>);
  for (int j = 1; j <= n; ++j) s += std::lgamma(a - (j - 1) / 2.0L);
  return s;
}

long double log_arch_factor(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, int kappa) {
  const int n = sigma1.n();
  if (sigma2.n() != n) throw std::invalid_argument("sigma1 and sigma2 must have the same size");
  if (kappa <= 2 * n) throw std::invalid_argument("archimedean factor needs kappa > 2n");
  const long double pi = std::numbers::pi_v<long double>;
  const long double d1 = static_cast<long double>(to_double(sigma1.det()));
  const long double d2 = static_cast<long double>(to_double(sigma2.det()));
  const long double tr = static_cast<long double>(to_double(sigma1.trace() + sigma2.trace()));
  const long double dk = static_cast<long double>(to_double(formal_degree(kappa, n)));
  return std::log(dk) - n * (n - 1) / 2.0L * std::log(2.0L) + static_cast<long double>(n) * kappa * std::log(4 * pi) +
         kappa / 2.0L * (std::log(d2) - std::log(d1)) + (kappa - (n + 1) / 2.0L) * std::log(d1) - 2 * pi * tr -
         log_gamma_n(n, static_cast<long double>(kappa));
}

long double arch_factor(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2, int kappa) {
  return std::exp(log_arch_factor(sigma1, sigma2, kappa));
}

int arch_sign(const IntMat& A, int kappa) {
  const int s = sgn(A.det());
  if (s == 0) throw std::invalid_argument("singular A");
  return (s < 0 && kappa % 2 != 0) ? -1 : 1;
}

ArchQuadratureResult arch_factor_quadrature_n2(const HalfIntegralSymMat& sigma1, const IntMat& A, const Int& r,
                                               int kappa, const ArchQuadratureOptions& opt) {
  if (sigma1.n() != 2 || A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("n = 2 only");
  if (kappa < 8) throw std::invalid_argument("quadrature oracle needs kappa >= 8");
  if (r <= 0) throw std::invalid_argument("r must be positive");
  using C = std::complex<double>;
  const double rd = r.get_d();
  const double a11 = A(0, 0).get_d(), a12 = A(0, 1).get_d(), a21 = A(1, 0).get_d(), a22 = A(1, 1).get_d();
  // X0 = I + A tA / r
  const double x11 = 1 + (a11 * a11 + a12 * a12) / rd, x22 = 1 + (a21 * a21 + a22 * a22) / rd;
  const double x12 = (a11 * a21 + a12 * a22) / rd;
  const double fa = static_cast<double>(sigma1.a()), fb = static_cast<double>(sigma1.b()),
               fc = static_cast<double>(sigma1.c());
  const double twopi = 2 * std::numbers::pi;
  auto integrand = [&](double x, double y, double z) {
    const C d = C(x11, x) * C(x22, z) - C(x12, y) * C(x12, y);
    return std::polar(1.0, twopi * (fa * x + fb * y + fc * z)) / std::pow(d, kappa);
  };
  auto modulus = [&](double x, double y, double z) {
    const C d = C(x11, x) * C(x22, z) - C(x12, y) * C(x12, y);
    return std::pow(std::abs(d), -kappa);
  };
  const double peak = modulus(0, 0, 0);
  // Gauss-Legendre nodes on [-1, 1].
  using GL = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> xs, ws;
  for (size_t k = 0; k < GL::abscissa().size(); ++k) {
    xs.push_back(GL::abscissa()[k]);
    ws.push_back(GL::weights()[k]);
    if (GL::abscissa()[k] != 0) {
      xs.push_back(-GL::abscissa()[k]);
      ws.push_back(GL::weights()[k]);
    }
  }
  const double freq = std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fc)});
  const double h = 1.0 / freq;
  const long cells = static_cast<long>(std::ceil(2 * opt.half_width / h));
  const double lo = -cells * h / 2;
  ArchQuadratureResult res;
  C total = 0;
  double tabs = 0;
  for (long i = 0; i < cells; ++i)
    for (long j = 0; j < cells; ++j)
      for (long k = 0; k < cells; ++k) {
        const double cx = lo + (i + 0.5) * h, cy = lo + (j + 0.5) * h, cz = lo + (k + 0.5) * h;
        if (modulus(cx, cy, cz) < opt.skip_threshold * peak) {
          ++res.cells_skipped;
          continue;
        }
        ++res.cells_used;
        C cell = 0;
        double cabs = 0;
        for (size_t u = 0; u < xs.size(); ++u)
          for (size_t v = 0; v < xs.size(); ++v)
            for (size_t w = 0; w < xs.size(); ++w) {
              const double x = cx + h / 2 * xs[u], y = cy + h / 2 * xs[v], z = cz + h / 2 * xs[w];
              const double wt = ws[u] * ws[v] * ws[w];
              cell += wt * integrand(x, y, z);
              cabs += wt * modulus(x, y, z);
            }
        total += cell;
        tabs += cabs;
      }
  const double vol = h * h * h / 8;
  // prefactor d_kappa 2^{2 kappa} (det A)^kappa / r^{kappa}
  const long double logpre = std::log(static_cast<long double>(to_double(formal_degree(kappa, 2)))) +
                             2.0L * kappa * std::log(2.0L) +
                             kappa * std::log(std::abs(static_cast<long double>(A.det().get_d()))) -
                             kappa * std::log(static_cast<long double>(rd));
  const double pre = static_cast<double>(std::exp(logpre)) * arch_sign(A, kappa);
  res.value = total * vol * pre;
  res.abs_integral = tabs * vol * std::abs(pre);
  return res;
}

LocalIntegralValue local_factor(const IntMat& A, const HalfIntegralSymMat& sigma1, const PrimeSpec& ps) {
  if (ps.lam.n() != 2) throw std::invalid_argument("local factors are implemented for n = 2");
  const int tau = static_cast<int>(ps.lam.ell0());
  const int t = static_cast<int>(ps.lam[2]);
  if (tau == 0) return {Rat(1), Provenance::Unramified};
  const DiagData d = reduce_to_diagonal(A, sigma1, ps.p, tau);
  return local_integral({ps.p, tau, t}, d);
}

GeomResult geometric_side(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2,
                          const SimilitudeSpec& spec, int kappa) {
  spec.validate();
  if (!spec.primes.empty() && sigma1.n() != 2) throw UnsupportedRegime("local factors need n = 2");
  GeomResult res;
  res.r = spec.r();
  const auto As = enumerate_A(sigma1, sigma2, res.r);
  const long double arch = As.empty() ? 0.0L : arch_factor(sigma1, sigma2, kappa);
  for (const auto& A : As) {
    GeomTerm term;
    term.A = A;
    term.arch = arch_sign(A, kappa) * arch;
    for (const auto& ps : spec.primes) {
      auto v = local_factor(A, sigma1, ps);
      term.local_product *= v.value;
      term.locals.emplace_back(ps.p, v);
    }
    res.total += term.arch * static_cast<long double>(to_double(term.local_product));
    res.terms.push_back(std::move(term));
  }
  return res;
}

Rat normalized_L(const HalfIntegralSymMat& sigma, const SimilitudeSpec& spec, int kappa) {
  spec.validate();
  if (!spec.primes.empty() && sigma.n() != 2) throw UnsupportedRegime("local factors need n = 2");
  long n1 = 0;
  for (const auto& A : enumerate_A(sigma, sigma, Int(1))) n1 += arch_sign(A, kappa);
  if (n1 == 0) throw UnsupportedRegime("signed count n_1 of unimodular solutions vanishes (odd kappa)");
  Rat num = 0;
  for (const auto& A : enumerate_A(sigma, sigma, spec.r())) {
    Rat prod = 1;
    for (const auto& ps : spec.primes) prod *= local_factor(A, sigma, ps).value;
    num += arch_sign(A, kappa) * prod;
  }
  return num / n1;
}

}  // namespace petersson
