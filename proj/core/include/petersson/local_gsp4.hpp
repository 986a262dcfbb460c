#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "petersson/forms.hpp"
#include "petersson/intmat.hpp"

namespace petersson {

// Double coset data at p: lambda(p) = diag(1, p^t, p^tau, p^{tau-t}).
struct LocalSpec {
  long p = 3;
  int tau = 0;
  int t = 0;
};

// D = diag(p^alpha, p^beta) and sigma_U = tU sigma1 U = (a, b/2; b/2, c).
struct DiagData {
  int alpha = 0;
  int beta = 0;
  HalfIntegralSymMat sigmaU;
};

enum class Provenance {
  Unramified,
  PropDVanish,
  CorAVanish,
  CorBVanish,
  BetaT1,
  BetaT2,
  Case3,
  Case4,
  Oracle,
};
const char* provenance_name(Provenance p);

struct LocalIntegralValue {
  Rat value;
  Provenance provenance = Provenance::Oracle;
};

struct NotCovered {
  std::string reason;
};

using ExplicitResult = std::variant<LocalIntegralValue, NotCovered>;

// Checks LocalSpec/DiagData invariants and p coprime to 4 det sigma_U.
void validate_local(const LocalSpec& spec, const DiagData& d);

// A = U D V; alpha, beta are the p-parts of the elementary divisors.
// tau = ord_p r. Throws UnsupportedRegime when p | 4 det sigma1 or when
// alpha + beta != tau (unequal determinant orders).
DiagData reduce_to_diagonal(const IntMat& A, const HalfIntegralSymMat& sigma1, long p, int tau);

ExplicitResult local_integral_explicit(const LocalSpec& spec, const DiagData& d);

struct OracleStats {
  int level = 0;                  // residue level S actually used
  std::int64_t evaluations = 0;   // support-predicate evaluations
  std::int64_t count_zero = 0;    // points with character argument 0
  std::int64_t count_top = 0;     // points with argument p^{S-1}
  bool form_vanishes = false;     // character trivial on the support
};

// Exact residue-sum evaluation. The summand depends on (x', y', z') only
// through residues mod p^S with S = t + 1 + margin once the character is
// rescaled to level S; unit-orbit constancy of the support turns the
// character sum into two counts (certified for every unit orbit element).
LocalIntegralValue local_integral_oracle(const LocalSpec& spec, const DiagData& d, int margin = 0,
                                         OracleStats* stats = nullptr);

// Literal sum over (Z/p^M)^3, M = max(beta, t+1) + margin, testing the
// support through all 2x2 minors of the 4x4 matrix and evaluating the
// character sum in Z[zeta_{p^beta}] exactly. Only for small p^{3M}.
Rat local_integral_bruteforce(const LocalSpec& spec, const DiagData& d, int margin = 0);

// Explicit value when covered, oracle otherwise.
LocalIntegralValue local_integral(const LocalSpec& spec, const DiagData& d);

// Sum over units y mod p^m of e(y l / p^m). m = 0 gives 1.
Int ramanujan_sum(const Int& ell, long p, int m);

// Sums appearing in the alpha = beta cases, with tau' = tau / 2.
Int case3_sum(long p, int taup, long a, long b, long c);
Int case4_sum(long p, int taup, long a, long b, long c);
// Same as case4 without the "not 1 mod p^{tau'}" exclusion.
Int case4_relaxed_sum(long p, int taup, long a, long b, long c);

// p^{tau + alpha}.
Rat trivial_bound(const LocalSpec& spec, const DiagData& d);
// prod_j p^{j (tau - alpha_j)} for general n.
Rat trivial_bound_general(long p, int tau, const std::vector<int>& alphas);

// Exponent (1 - eps)(3 tau / 2 - t) - eps tau.
double conj_exponent(const LocalSpec& spec, double eps = 0.01);
// C(p) with trivial_bound <= C(p) p^{conj_exponent} for all admissible tau <= tau_max.
double conj_constant(long p, int tau_max = 6, double eps = 0.01);
bool conj_bound_check(const LocalSpec& spec, const DiagData& d, const Rat& value, double Cp,
                      double eps = 0.01);
// Constant for the p^{3 tau / 4} bound of the alpha = beta cases: 2 p^2.
double case34_constant(long p);
bool case34_bound_check(const LocalSpec& spec, const Rat& value);

}  // namespace petersson
