#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "petersson/arith.hpp"
#include "petersson/forms.hpp"
#include "petersson/geom_side.hpp"
#include "petersson/root_data.hpp"

namespace petersson {

// Finitely supported element of Q[X^*(T)] for the dual torus of Spin(2n+1),
// keyed by doubled nu-coordinates m = 2 nu (all entries of one parity).
class LaurentElement {
 public:
  using Key = std::vector<long>;
  LaurentElement() = default;
  explicit LaurentElement(int n) : n_(n) {}
  static LaurentElement monomial(const Key& m, const Rat& c = 1);

  int n() const { return n_; }
  const std::map<Key, Rat>& terms() const { return c_; }
  Rat coeff(const Key& m) const;
  void add(const Key& m, const Rat& c);
  bool is_zero() const { return c_.empty(); }
  bool is_weyl_symmetric() const;
  size_t size() const { return c_.size(); }

  LaurentElement operator+(const LaurentElement& o) const;
  LaurentElement operator-(const LaurentElement& o) const;
  LaurentElement operator*(const LaurentElement& o) const;
  bool operator==(const LaurentElement& o) const { return n_ == o.n_ && c_ == o.c_; }

  // Adds v to every key (multiplication by e^{v/2} in nu-coordinates).
  LaurentElement shifted(const Key& v) const;
  // Exact division by (e^{a} - 1), a in nu-coordinates (doubled shift 2a).
  // Returns false if the remainder is nonzero.
  bool divide_by_root_binomial(const std::vector<long>& a_nu, LaurentElement& quotient) const;

 private:
  int n_ = 0;
  std::map<Key, Rat> c_;
};

// Point of the compact torus in the l1 = 0 chart: coordinates (z_0, z_2, ..., z_n)
// and e^lambda(t) = z_0^{l0} prod_{j >= 2} z_j^{l_j}.
struct TorusPoint {
  std::vector<std::complex<double>> z;
  int n() const { return static_cast<int>(z.size()); }
  // Point with z_k = exp(2 pi i phi_k).
  static TorusPoint from_angles(const std::vector<double>& phi);
  static TorusPoint identity(int n);
  TorusPoint conjugate() const;
};

std::complex<double> eval_monomial(const LaurentElement::Key& m, const TorusPoint& t);
std::complex<double> eval(const LaurentElement& f, const TorusPoint& t);

// A_mu = sum_w sgn(w) e^{w mu}, mu given in doubled coordinates.
LaurentElement alternating_sum(const std::vector<long>& two_nu);
LaurentElement alternating_sum(const Coweight& mu);

// F_lambda = A_{lambda + rho} / A_rho by repeated exact binomial division.
// Throws logic_error if a remainder is nonzero.
LaurentElement weyl_character(const Coweight& lam);

// F_lambda(t); ratio of alternating sums away from zeros of A_rho, Laurent
// evaluation otherwise.
std::complex<double> char_eval(const Coweight& lam, const TorusPoint& t);
std::complex<double> char_eval(const LaurentElement& chi, const Coweight& lam, const TorusPoint& t);

// |A_rho(t)|^2.
double sato_tate_density(const TorusPoint& t);
// |det(Ad(t^{-1}) - 1)| on the root spaces = prod_{roots a} |e^a(t) - 1|.
double sato_tate_density_adjoint(const TorusPoint& t);

// sum over expressions mu = sum n(a) a (a positive coroots) of p^{-sum n(a)}.
Rat kostant_phat(const std::vector<long>& nu, long p);
Rat kostant_phat(const Coweight& mu, long p);

// P_{mu,lambda}(p); throws invalid_argument unless mu <= lambda, both dominant.
Rat kl_poly(const Coweight& mu, const Coweight& lam, long p);

// mu -> P_{mu,lambda}(p) over dominant mu <= lambda (exact row of the
// change of basis, before the common factor p^{-<lambda, rho>}).
std::map<Coweight, Rat> kl_row(const Coweight& lam, long p);
// mu -> p^{-<lambda, rho>} P_{mu,lambda}(p); <lambda, rho> may be half-integral.
std::map<Coweight, double> kato_lusztig_expand(const Coweight& lam, long p);

// q * prod p^{e_p} with rational exponents (possibly half-integral).
struct ScaledRational {
  Rat q = 0;
  std::vector<std::pair<long, Rat>> powers;
  double value() const;
  bool exactly_one() const;
};

// L-value of prod_p S(c_{mu_p}); the default evaluates normalized_L.
using LValueFn = std::function<Rat(const SimilitudeSpec&)>;
LValueFn default_l_values(const HalfIntegralSymMat& sigma, int kappa);

// L(F_lambda) for one dominant coweight per prime.
ScaledRational L_of_F(const std::vector<PrimeSpec>& lams, const LValueFn& lvals);
ScaledRational L_of_F(const std::vector<PrimeSpec>& lams, const HalfIntegralSymMat& sigma, int kappa);

struct DensityOptions {
  std::vector<long> primes;  // the set S; n = 2
  int truncation = 6;        // max l0 per prime
  int grid = 200;            // points per angle, full torus
  double eps = 0.01;
};

struct DensitySample {
  std::vector<double> angles;  // phi per coordinate, concatenated over primes
  double density = 0;
  double imag = 0;
};

struct MeasureExpansion {
  std::vector<std::pair<std::vector<Coweight>, ScaledRational>> coeffs;  // lambda tuple -> L(F)
  double tail_bound = 0;
};

MeasureExpansion measure_expansion(const DensityOptions& opt, const LValueFn& lvals);

struct DensityReport {
  MeasureExpansion expansion;
  std::vector<DensitySample> samples;
  double max_imag = 0;
  double max_dev = 0;          // max |density - 1|
  double st_integral = 0;      // grid integral of density against mu_ST
};

DensityReport density_samples(const DensityOptions& opt, const LValueFn& lvals);

// Geometric tail sum_{mu: l0 > truncation} p^{-eps <mu, rho>} for n = 2, times |W|^2 2^{d+}.
double tail_bound_n2(long p, int truncation, double eps);

// Tensor-grid quadrature of F_lambda conj(F_mu) |A_rho|^2 / |W| over the torus.
std::complex<double> orthonormality_check(const Coweight& lam, const Coweight& mu, int grid);

}  // namespace petersson
