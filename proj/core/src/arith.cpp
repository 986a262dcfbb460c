#include "petersson/arith.hpp"

#include <numeric>

namespace petersson {

Valuation valuation(const Int& x, long p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(pval(x, p));
}

Valuation valuation(const Rat& x, long p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(pval(x.get_num(), p) - pval(x.get_den(), p));
}

long pval(const Int& x, long p) {
  if (x == 0) throw std::invalid_argument("pval of zero");
  if (p < 2) throw std::invalid_argument("pval needs p >= 2");
  Int y = abs(x);
  Int P = p;
  long v = 0;
  while (mpz_divisible_p(y.get_mpz_t(), P.get_mpz_t())) {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), P.get_mpz_t());
    ++v;
  }
  return v;
}

long pval(std::int64_t x, long p) {
  if (x == 0) throw std::invalid_argument("pval of zero");
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Int ipow(long base, unsigned long e) {
  Int r;
  Int b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(long base, long e) {
  if (e >= 0) return Rat(ipow(base, static_cast<unsigned long>(e)));
  if (base == 0) throw std::domain_error("0 to a negative power");
  return Rat(Int(1), ipow(base, static_cast<unsigned long>(-e)));
}

std::int64_t ipow64(long base, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, static_cast<std::int64_t>(base), &r))
      throw std::overflow_error("ipow64 overflow");
  }
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

double to_double(const Rat& q) { return q.get_d(); }

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("not invertible");
  return mod(s0, m);
}

}  // namespace petersson
