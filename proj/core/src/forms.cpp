#include "petersson/forms.hpp"

#include <stdexcept>

namespace petersson {

HalfIntegralSymMat::HalfIntegralSymMat(IntMat two_sigma) : ts_(std::move(two_sigma)) {
  const int n = ts_.rows();
  if (!ts_.square() || n == 0) throw std::invalid_argument("sigma must be a nonempty square matrix");
  for (int i = 0; i < n; ++i) {
    if (mpz_odd_p(ts_(i, i).get_mpz_t())) throw std::invalid_argument("2*sigma must have even diagonal");
    for (int j = 0; j < i; ++j)
      if (ts_(i, j) != ts_(j, i)) throw std::invalid_argument("sigma must be symmetric");
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (ts_.minor(idx, idx) <= 0) throw std::invalid_argument("sigma must be positive definite");
  }
}

HalfIntegralSymMat HalfIntegralSymMat::binary(long a, long b, long c) {
  return HalfIntegralSymMat(IntMat{{2 * a, b}, {b, 2 * c}});
}

HalfIntegralSymMat HalfIntegralSymMat::identity(int n) {
  return HalfIntegralSymMat(IntMat::identity(n).scaled(2));
}

Rat HalfIntegralSymMat::det() const {
  Rat d(ts_.det());
  Rat s(ipow(2, static_cast<unsigned long>(n())));
  return d / s;
}

Rat HalfIntegralSymMat::trace() const {
  Int t = 0;
  for (int i = 0; i < n(); ++i) t += ts_(i, i);
  Rat q(t, 2);
  q.canonicalize();
  return q;
}

long HalfIntegralSymMat::a() const {
  if (n() != 2) throw std::invalid_argument("binary form accessor on n != 2");
  return Int(ts_(0, 0) / 2).get_si();
}
long HalfIntegralSymMat::b() const {
  if (n() != 2) throw std::invalid_argument("binary form accessor on n != 2");
  return ts_(0, 1).get_si();
}
long HalfIntegralSymMat::c() const {
  if (n() != 2) throw std::invalid_argument("binary form accessor on n != 2");
  return Int(ts_(1, 1) / 2).get_si();
}

HalfIntegralSymMat HalfIntegralSymMat::transformed(const IntMat& U) const {
  return HalfIntegralSymMat(U.transpose() * ts_ * U);
}

Int HalfIntegralSymMat::two_q(const std::vector<Int>& v) const {
  Int s = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) s += v[i] * ts_(i, j) * v[j];
  return s;
}

}  // namespace petersson
