#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "petersson/intmat.hpp"
#include "petersson/root_data.hpp"

namespace petersson {

struct SnfDecomposition {
  IntMat U, D, V;  // A = U * D * V, U and V unimodular
};

// Requires a square matrix with nonzero determinant.
SnfDecomposition smith_normal_form(const IntMat& A);

// Element of M(Q_p) with a p-power denominator: value = num / p^den_exp.
struct PMatrix {
  IntMat num;
  long den_exp = 0;
};

// min over all m x m minors of the p-adic valuation; infinity if all vanish.
Valuation minor_valuation(const PMatrix& g, int m, long p);
inline Valuation minor_valuation(const IntMat& g, int m, long p) { return minor_valuation(PMatrix{g, 0}, m, p); }

struct CosetLabel {
  Coweight lam;            // dominant, canonical (l1 = 0)
  long r_exponent = 0;     // ord_p r(g)
  std::vector<long> gsp;   // raw GSp tuple (l0, l1, ..., ln) read off from minors
};

// Similitude factor of an integer matrix, if tg J g = r J.
std::optional<Int> similitude(const IntMat& g);

CosetLabel classify_coset(const PMatrix& g, long p);
inline CosetLabel classify_coset(const IntMat& g, long p) { return classify_coset(PMatrix{g, 0}, p); }

// diag(p^{l1},...,p^{ln}, p^{l0-l1},...,p^{l0-ln}) for the canonical representative.
IntMat lambda_matrix(const Coweight& lam, long p);

IntMat random_integral_symplectic(int n, std::uint64_t seed, int word_length);

}  // namespace petersson
