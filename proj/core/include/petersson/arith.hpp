#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace petersson {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when inputs fall outside the hypotheses the library can honour
// (e.g. p | 4 det sigma). The CLI maps this to exit status 2.
struct UnsupportedRegime : std::domain_error {
  using std::domain_error::domain_error;
};

// p-adic valuation with an explicit infinity, so that v(0) never turns into
// a large integer that silently wins or loses comparisons.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long v) : finite_(true), v_(v) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return !finite_; }
  long value() const {
    if (!finite_) throw std::logic_error("valuation is infinite");
    return v_;
  }
  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (!finite_ || !o.finite_) return o.finite_ <=> finite_;
    return v_ <=> o.v_;
  }
  constexpr bool operator==(const Valuation& o) const = default;
  Valuation operator+(long s) const { return finite_ ? Valuation(v_ + s) : *this; }
  Valuation operator-(long s) const { return finite_ ? Valuation(v_ - s) : *this; }
  std::string str() const { return finite_ ? std::to_string(v_) : "inf"; }

 private:
  bool finite_ = false;
  long v_ = 0;
};

Valuation valuation(const Int& x, long p);
Valuation valuation(const Rat& x, long p);
// Requires x != 0.
long pval(const Int& x, long p);
long pval(std::int64_t x, long p);

Int ipow(long base, unsigned long e);
Rat rpow(long base, long e);
std::int64_t ipow64(long base, unsigned e);

bool is_prime(long p);
std::string to_string(const Rat& q);
Rat rat_from_string(const std::string& s);
double to_double(const Rat& q);

// Exact modular helpers on 64-bit residues; moduli stay far below 2^31 here.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

}  // namespace petersson
