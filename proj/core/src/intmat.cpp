#include "petersson/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace petersson {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(r_) * c_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) a_.emplace_back(v);
  }
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::diag(const std::vector<Int>& d) {
  const int n = static_cast<int>(d.size());
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch in product");
  IntMat m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

IntMat IntMat::operator+(const IntMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in sum");
  IntMat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

IntMat IntMat::operator-(const IntMat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in difference");
  IntMat m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

IntMat IntMat::scaled(const Int& s) const {
  IntMat m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

IntMat IntMat::transpose() const {
  IntMat m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

bool IntMat::operator==(const IntMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool IntMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Int IntMat::det() const {
  if (!square()) throw std::invalid_argument("det of non-square matrix");
  const int n = r_;
  if (n == 0) return 1;
  std::vector<Int> m = a_;
  auto at = [&](int i, int j) -> Int& { return m[static_cast<size_t>(i) * n + j]; };
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = v;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Int IntMat::minor(const std::vector<int>& rows, const std::vector<int>& cols) const {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs equal index counts");
  const int m = static_cast<int>(rows.size());
  if (m == 1) return (*this)(rows[0], cols[0]);
  if (m == 2)
    return (*this)(rows[0], cols[0]) * (*this)(rows[1], cols[1]) -
           (*this)(rows[0], cols[1]) * (*this)(rows[1], cols[0]);
  IntMat s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s.det();
}

IntMat IntMat::adjugate() const {
  if (!square()) throw std::invalid_argument("adjugate of non-square matrix");
  const int n = r_;
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> rs, cs;
      for (int k = 0; k < n; ++k) {
        if (k != j) rs.push_back(k);
        if (k != i) cs.push_back(k);
      }
      Int c = minor(rs, cs);
      adj(i, j) = ((i + j) % 2 ? -c : c);
    }
  return adj;
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMat symplectic_J(int n) {
  IntMat J(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = 1;
    J(n + i, i) = -1;
  }
  return J;
}

}  // namespace petersson
