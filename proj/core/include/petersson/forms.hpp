#pragma once

#include <string>

#include "petersson/intmat.hpp"

namespace petersson {

// Positive-definite half-integral symmetric matrix sigma, stored as 2*sigma.
class HalfIntegralSymMat {
 public:
  HalfIntegralSymMat() = default;
  explicit HalfIntegralSymMat(IntMat two_sigma);  // validates
  // n = 2 convenience: sigma = (a, b/2; b/2, c).
  static HalfIntegralSymMat binary(long a, long b, long c);
  static HalfIntegralSymMat identity(int n);

  const IntMat& two_sigma() const { return ts_; }
  int n() const { return ts_.rows(); }
  Rat entry(int i, int j) const {
    Rat q(ts_(i, j), 2);
    q.canonicalize();
    return q;
  }
  Rat det() const;
  Rat trace() const;
  // det(2 sigma); equals 4 det sigma when n = 2.
  Int det_two_sigma() const { return ts_.det(); }

  // Binary form coefficients (a, b, c) with sigma = (a, b/2; b/2, c).
  long a() const;
  long b() const;
  long c() const;

  // tU sigma U for an integer matrix U.
  HalfIntegralSymMat transformed(const IntMat& U) const;
  // Quadratic form value tv sigma v, times 2 (always an integer).
  Int two_q(const std::vector<Int>& v) const;

  bool operator==(const HalfIntegralSymMat& o) const { return ts_ == o.ts_; }
  std::string str() const { return ts_.str(); }

 private:
  IntMat ts_;
};

}  // namespace petersson
