#include "petersson/error_bound.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace petersson {

long double log_off_diagonal_bound(const ErrorParams& p) {
  if (p.kappa < 17) throw UnsupportedRegime("off-diagonal bound needs n = 2 and kappa >= 17");
  if (p.r < 1 || p.N < 1) throw std::invalid_argument("need r >= 1 and N >= 1");
  if (!(p.constant > 0)) throw std::invalid_argument("implied constant must be positive");
  const long double k = p.kappa;
  const long double lr = std::log(static_cast<long double>(p.r.get_d()));
  const long double lN = std::log(static_cast<long double>(p.N.get_d()));
  return std::log(static_cast<long double>(p.constant)) + 10.5L * std::log(k) + k / 2 * (std::log(8.0L) + lr) -
         (k - 12) * lN;
}

long double off_diagonal_bound(const ErrorParams& p) { return std::exp(log_off_diagonal_bound(p)); }

EulerCheck euler_sum_check(double a, double Delta, double kappa, long truncation) {
  if (kappa < 2) throw std::invalid_argument("need kappa >= 2");
  if (!(Delta > 0)) throw std::invalid_argument("need Delta > 0");
  // fold a into [-1/2, 1/2]; the sum is periodic in a
  const double af = a - std::round(a);
  const double T = static_cast<double>(truncation);
  if (T < 3) throw std::invalid_argument("truncation too small");
  EulerCheck c;
  for (long n = -truncation; n <= truncation; ++n) {
    const double x = n + af;
    c.lhs += std::pow(x * x + Delta * Delta, -kappa / 2);
  }
  // sum over |n| > T of |n + a|^{-kappa} <= 2 int_{T - 1}^{inf} x^{-kappa} dx
  c.lhs += 2 * std::pow(T - 1, 1 - kappa) / (kappa - 1);
  const double integral = std::pow(Delta, 1 - kappa) * std::sqrt(std::numbers::pi) *
                          std::exp(std::lgamma((kappa - 1) / 2) - std::lgamma(kappa / 2));
  c.rhs = (kappa + Delta) / Delta * integral;
  c.holds = c.lhs <= c.rhs;
  return c;
}

QuantitativeFormula quantitative_formula(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2,
                                         const SimilitudeSpec& spec, int kappa, const Int& N, double constant) {
  if (sigma1.n() != 2) throw UnsupportedRegime("quantitative formula is for n = 2");
  for (const auto& ps : spec.primes)
    if (mpz_divisible_ui_p(N.get_mpz_t(), static_cast<unsigned long>(ps.p)))
      throw UnsupportedRegime("level N must be prime to the primes of S");
  QuantitativeFormula q;
  q.error_bound = off_diagonal_bound({kappa, spec.r(), N, constant});
  q.main = geometric_side(sigma1, sigma2, spec, kappa).total;
  return q;
}

}  // namespace petersson
