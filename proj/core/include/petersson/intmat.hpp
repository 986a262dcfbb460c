#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "petersson/arith.hpp"

namespace petersson {

// Dense exact integer matrix, row-major.
class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long>> rows);
  static IntMat identity(int n);
  static IntMat diag(const std::vector<Int>& d);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  Int& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Int& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  IntMat operator*(const IntMat& o) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  IntMat scaled(const Int& s) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const;
  bool is_zero() const;

  // Fraction-free Bareiss elimination.
  Int det() const;
  // Minor on the given row and column index sets (same size).
  Int minor(const std::vector<int>& rows, const std::vector<int>& cols) const;
  // Inverse scaled by det: adj(A) with A*adj(A) = det(A) I.
  IntMat adjugate() const;

  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

// Standard symplectic form J = (0 I; -I 0) of size 2n.
IntMat symplectic_J(int n);

}  // namespace petersson
