#pragma once

#include "petersson/arith.hpp"
#include "petersson/geom_side.hpp"

namespace petersson {

struct ErrorParams {
  int kappa = 17;
  Int r = 1;
  Int N = 1;
  double constant = 1.0;  // the unspecified absolute implied constant
};

// log of C kappa^{21/2} (8r)^{kappa/2} / N^{kappa-12}; needs kappa >= 17.
long double log_off_diagonal_bound(const ErrorParams& p);
long double off_diagonal_bound(const ErrorParams& p);

struct EulerCheck {
  double lhs = 0;  // truncated lattice sum plus a tail bound
  double rhs = 0;  // ((kappa + Delta) / Delta) times the line integral
  bool holds = false;
};

// Lattice sum of ((n + a)^2 + Delta^2)^{-kappa/2} over |n| <= truncation
// against its integral comparison.
EulerCheck euler_sum_check(double a, double Delta, double kappa, long truncation = 2000);

struct QuantitativeFormula {
  long double main = 0;
  long double error_bound = 0;
  bool constant_caveat = true;
};

// main = geometric side (independent of N), error from off_diagonal_bound.
QuantitativeFormula quantitative_formula(const HalfIntegralSymMat& sigma1, const HalfIntegralSymMat& sigma2,
                                         const SimilitudeSpec& spec, int kappa, const Int& N,
                                         double constant = 1.0);

}  // namespace petersson
