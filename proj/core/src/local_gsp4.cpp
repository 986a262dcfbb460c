#include "petersson/local_gsp4.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "petersson/padic_cartan.hpp"

namespace petersson {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Unramified: return "unramified";
    case Provenance::PropDVanish: return "PropD-vanish";
    case Provenance::CorAVanish: return "CorA-vanish";
    case Provenance::CorBVanish: return "CorB-vanish";
    case Provenance::BetaT1: return "betat1";
    case Provenance::BetaT2: return "betat2";
    case Provenance::Case3: return "case3";
    case Provenance::Case4: return "case4";
    case Provenance::Oracle: return "oracle";
  }
  return "?";
}

void validate_local(const LocalSpec& s, const DiagData& d) {
  if (!is_prime(s.p)) throw std::invalid_argument("p must be prime");
  if (s.tau < 0 || s.t < 0 || 2 * s.t > s.tau) throw std::invalid_argument("need 0 <= t <= tau/2");
  if (d.alpha < 0 || d.alpha > d.beta || d.alpha + d.beta != s.tau)
    throw std::invalid_argument("need 0 <= alpha <= beta and alpha + beta = tau");
  if (d.sigmaU.n() != 2) throw std::invalid_argument("local engine is for n = 2");
  if (mpz_divisible_ui_p(d.sigmaU.det_two_sigma().get_mpz_t(), static_cast<unsigned long>(s.p)))
    throw UnsupportedRegime("p divides 4 det sigma (standing hypothesis p ∤ 4 det sigma_1 fails)");
}

DiagData reduce_to_diagonal(const IntMat& A, const HalfIntegralSymMat& sigma1, long p, int tau) {
  if (A.rows() != 2 || !A.square()) throw std::invalid_argument("reduce_to_diagonal needs a 2x2 matrix");
  if (mpz_divisible_ui_p(sigma1.det_two_sigma().get_mpz_t(), static_cast<unsigned long>(p)))
    throw UnsupportedRegime("p divides 4 det sigma_1");
  const SnfDecomposition snf = smith_normal_form(A);
  const int alpha = static_cast<int>(pval(snf.D(0, 0), p));
  const int beta = static_cast<int>(pval(snf.D(1, 1), p));
  if (beta > tau) throw std::invalid_argument("r tA^{-1} is not integral at p (elementary divisor exceeds p^tau)");
  if (alpha + beta != tau)
    throw UnsupportedRegime("ord_p det sigma_1 != ord_p det sigma_2, so alpha + beta != tau");
  return {alpha, beta, sigma1.transformed(snf.U)};
}

Int ramanujan_sum(const Int& ell, long p, int m) {
  if (m < 0) throw std::invalid_argument("ramanujan_sum needs m >= 0");
  if (m == 0) return 1;
  const Int pm = ipow(p, m), pm1 = ipow(p, m - 1);
  if (mpz_divisible_p(ell.get_mpz_t(), pm.get_mpz_t())) return pm - pm1;
  if (mpz_divisible_p(ell.get_mpz_t(), pm1.get_mpz_t())) return -pm1;
  return 0;
}

namespace {

Int ram64(std::int64_t ell, long p, int m) { return ramanujan_sum(Int(static_cast<long>(ell)), p, m); }

}  // namespace

Int case3_sum(long p, int taup, long a, long b, long c) {
  const std::int64_t P = ipow64(p, taup);
  Int s = 0;
  for (std::int64_t x = 1; x < P; ++x) {
    if (x % p == 0) continue;
    const std::int64_t z = inv_mod(x, P);
    s += ram64(mod(a * x + c * z + b, P), p, taup);
  }
  return s;
}

namespace {

Int case4_generic(long p, int taup, long a, long b, long c, bool exclude) {
  if (taup < 1) throw std::invalid_argument("case 4 sums need tau' >= 1");
  const std::int64_t P = ipow64(p, taup), Q = ipow64(p, taup - 1);
  Int s = 0;
  for (std::int64_t x = 1; x < P; ++x) {
    if (x % p == 0) continue;
    const std::int64_t zq = Q > 1 ? inv_mod(x, Q) : 0;
    for (std::int64_t j = 0; j < p; ++j) {
      const std::int64_t z = zq + j * Q;
      if (exclude && mod(x * z, P) == 1) continue;
      s += ram64(mod(a * x + c * z + b, P), p, taup);
    }
  }
  return s;
}

}  // namespace

Int case4_sum(long p, int taup, long a, long b, long c) { return case4_generic(p, taup, a, b, c, true); }
Int case4_relaxed_sum(long p, int taup, long a, long b, long c) { return case4_generic(p, taup, a, b, c, false); }

ExplicitResult local_integral_explicit(const LocalSpec& s, const DiagData& d) {
  validate_local(s, d);
  const long p = s.p;
  const long a = d.sigmaU.a(), b = d.sigmaU.b(), c = d.sigmaU.c();
  const int tau = s.tau, t = s.t, al = d.alpha, be = d.beta;
  auto val = [](long v, Provenance pr) { return ExplicitResult(LocalIntegralValue{Rat(v), pr}); };
  if (tau == 0) return val(1, Provenance::Unramified);
  if (be > tau) return val(0, Provenance::PropDVanish);
  if (be - 1 >= t + 1) {
    if (a % p != 0 && be >= 2 && tau - 1 >= t + 1) return val(0, Provenance::CorAVanish);
    if (b % p != 0 && al >= 2 && tau - 2 >= t + 1) return val(0, Provenance::CorBVanish);
    return NotCovered{"beta - 1 >= t + 1 but neither vanishing corollary applies"};
  }
  if (tau % 2 == 1) {
    const int tp = (tau - 1) / 2;
    if (al == tp && be == tp + 1 && t == tp) {
      if (tp >= 2) return val(0, Provenance::BetaT1);
      return NotCovered{"odd tau with tau' <= 1"};
    }
    throw std::logic_error("beta - 1 <= t outside the four listed configurations");
  }
  const int tp = tau / 2;
  if (al == tp - 1 && be == tp + 1 && t == tp) {
    if (tp >= 3 || (tp >= 2 && a % p != 0 && c % p != 0)) return val(0, Provenance::BetaT2);
    return NotCovered{"alpha = tau'-1 with tau' <= 2 and p | ac"};
  }
  if (al == tp && be == tp && t == tp) {
    if (tp < 2) return NotCovered{"alpha = beta = t with tau' = 1"};
    return LocalIntegralValue{Rat(case3_sum(p, tp, a, b, c)), Provenance::Case3};
  }
  if (al == tp && be == tp && t == tp - 1) {
    if (tp < 2) return NotCovered{"alpha = beta = t + 1 with tau' = 1"};
    return LocalIntegralValue{Rat(case4_sum(p, tp, a, b, c)), Provenance::Case4};
  }
  throw std::logic_error("beta - 1 <= t outside the four listed configurations");
}

namespace {

constexpr std::int64_t kOracleBudget = 40'000'000'000LL;

}  // namespace

LocalIntegralValue local_integral_oracle(const LocalSpec& s, const DiagData& d, int margin, OracleStats* stats) {
  validate_local(s, d);
  if (margin < 0) throw std::invalid_argument("margin must be >= 0");
  const long p = s.p;
  const int al = d.alpha, be = d.beta, t = s.t;
  const int S = t + 1 + margin;
  const std::int64_t P = ipow64(p, S);
  const std::int64_t Ptop = P / p;  // p^{S-1}

  // Character a x'/p^beta + b y'/p^alpha + c z'/p^alpha rescaled to level S.
  const std::array<long, 3> coef{d.sigmaU.a(), d.sigmaU.b(), d.sigmaU.c()};
  const std::array<int, 3> lvl{be, al, al};
  std::array<std::int64_t, 3> ch{};
  for (int i = 0; i < 3; ++i) {
    if (lvl[i] <= S) {
      ch[i] = mod(static_cast<std::int64_t>(coef[i]) * ipow64(p, S - lvl[i]), P);
    } else {
      // the summand then varies along fibres x' + p^S Z_p, which integrate to 0
      const std::int64_t q = ipow64(p, lvl[i] - S);
      if (coef[i] % q != 0) {
        if (stats) *stats = OracleStats{S, 0, 0, 0, false};
        return {Rat(0), Provenance::Oracle};
      }
      ch[i] = mod(coef[i] / q, P);
    }
  }

  std::vector<int> vt(static_cast<size_t>(P));
  vt[0] = S;
  for (std::int64_t r = 1; r < P; ++r) vt[r] = static_cast<int>(pval(r, p));
  const std::int64_t pd = mod(ipow64(p, be - al), P);
  const int two_al = 2 * al;
  auto support = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const int vx = vt[x], vy = vt[y], vz = vt[z];
    if (al > 0 && std::min({vx, vy, vz}) > 0) return false;
    const int q = vt[mod(x * z - pd * mod(y * y, P), P)];
    const int m = std::min({two_al, al + vx, be + vy, al + vz, q});
    return m == t;
  };

  // Variable with the least valuation coefficient is solved for.
  int sv = 0;
  for (int i = 1; i < 3; ++i)
    if (vt[ch[i]] < vt[ch[sv]]) sv = i;
  const int g = vt[ch[sv]];
  OracleStats st;
  st.level = S;
  std::int64_t c0 = 0;
  std::vector<std::int64_t> ctop(static_cast<size_t>(p), 0);  // index u: target u p^{S-1}

  if (g >= S) {
    st.form_vanishes = true;
    const std::int64_t cost = P * P * P;
    if (cost > kOracleBudget) throw std::length_error("oracle level infeasible");
    for (std::int64_t x = 0; x < P; ++x)
      for (std::int64_t y = 0; y < P; ++y)
        for (std::int64_t z = 0; z < P; ++z)
          if (support(x, y, z)) ++c0;
    st.evaluations = cost;
  } else {
    const std::int64_t pg = ipow64(p, g);
    const std::int64_t Pr = P / pg;  // p^{S-g}
    const std::int64_t winv = inv_mod(ch[sv] / pg, Pr);
    const std::int64_t cost = P * P * p * pg;
    if (cost > kOracleBudget) throw std::length_error("oracle level infeasible");
    const int o1 = (sv + 1) % 3, o2 = (sv + 2) % 3;
    std::array<std::int64_t, 3> v{};
    for (std::int64_t u1 = 0; u1 < P; ++u1) {
      v[o1] = u1;
      const std::int64_t r1 = ch[o1] * u1 % P;
      for (std::int64_t u2 = 0; u2 < P; ++u2) {
        v[o2] = u2;
        const std::int64_t rest = (r1 + ch[o2] * u2) % P;
        if (rest % pg != 0) continue;  // every target is divisible by p^g
        for (long u = 0; u < p; ++u) {
          const std::int64_t target = u * Ptop;
          const std::int64_t diff = mod(target - rest, P);
          if (diff % pg != 0) continue;
          const std::int64_t x0 = (diff / pg) % Pr * winv % Pr;
          std::int64_t hits = 0;
          for (std::int64_t j = 0; j < pg; ++j) {
            v[sv] = x0 + j * Pr;
            if (support(v[0], v[1], v[2])) ++hits;
          }
          st.evaluations += pg;
          if (u == 0)
            c0 += hits;
          else
            ctop[u] += hits;
        }
      }
    }
    for (long u = 2; u < p; ++u)
      if (ctop[u] != ctop[1]) throw std::logic_error("unit-orbit certification failed in oracle");
  }
  st.count_zero = c0;
  st.count_top = st.form_vanishes ? 0 : ctop[1];
  if (stats) *stats = st;
  Rat val = Rat(Int(static_cast<long>(st.count_zero - st.count_top))) * rpow(p, be + 2 * al - 3L * S);
  return {val, Provenance::Oracle};
}

namespace {

// sum_k cnt[k] zeta^{-k}, zeta = e(1/p^m); must be rational.
Rat cyclotomic_eval(const std::vector<std::int64_t>& cnt, long p, int m) {
  if (m == 0) return Rat(Int(static_cast<long>(cnt.at(0))));
  const std::int64_t N = ipow64(p, m);
  std::vector<Int> poly(static_cast<size_t>(N));
  for (std::int64_t k = 0; k < N; ++k) poly[mod(-k, N)] += Int(static_cast<long>(cnt[k]));
  const std::int64_t q = N / p, deg = (p - 1) * q;
  // Phi_{p^m}(X) = sum_{j<p} X^{j q}
  for (std::int64_t e = N - 1; e >= deg; --e) {
    if (poly[e] == 0) continue;
    const Int co = poly[e];
    poly[e] = 0;
    for (long j = 0; j < p - 1; ++j) poly[e - deg + j * q] -= co;
  }
  for (std::int64_t e = 1; e < deg; ++e)
    if (poly[e] != 0) throw std::logic_error("character sum is not rational");
  return Rat(poly[0]);
}

}  // namespace

Rat local_integral_bruteforce(const LocalSpec& s, const DiagData& d, int margin) {
  validate_local(s, d);
  const long p = s.p;
  const int al = d.alpha, be = d.beta, t = s.t;
  const int M = std::max(be, t + 1) + margin;
  const std::int64_t P = ipow64(p, M);
  if (P * P * P > 200'000'000LL) throw std::length_error("brute-force level infeasible");
  const std::int64_t mb = ipow64(p, be);
  const std::int64_t pa = mod(ipow64(p, al), P), pb = mod(ipow64(p, be), P), pd = mod(ipow64(p, be - al), P);
  const long a = d.sigmaU.a(), b = d.sigmaU.b(), c = d.sigmaU.c();
  auto v = [&](std::int64_t e) {
    e = mod(e, P);
    return e == 0 ? M : static_cast<int>(pval(e, p));
  };
  std::vector<std::int64_t> cnt(static_cast<size_t>(mb), 0);
  std::int64_t m[4][4];
  for (std::int64_t x = 0; x < P; ++x)
    for (std::int64_t y = 0; y < P; ++y)
      for (std::int64_t z = 0; z < P; ++z) {
        const std::int64_t rows[4][4] = {
            {pa, 0, x, y}, {0, pb, pd * y % P, z}, {0, 0, pb, 0}, {0, 0, 0, pa}};
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) m[i][j] = rows[i][j];
        int v1 = M;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) v1 = std::min(v1, v(m[i][j]));
        if (v1 != 0) continue;
        int v2 = M;
        for (int r0 = 0; r0 < 4; ++r0)
          for (int r1 = r0 + 1; r1 < 4; ++r1)
            for (int c0 = 0; c0 < 4; ++c0)
              for (int c1 = c0 + 1; c1 < 4; ++c1)
                v2 = std::min(v2, v(m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]));
        if (v2 != t) continue;
        const std::int64_t k = mod(a * x + pd * mod(b * y + c * z, P), mb);
        ++cnt[k];
      }
  return rpow(p, be + 2 * al - 3L * M) * cyclotomic_eval(cnt, p, be);
}

LocalIntegralValue local_integral(const LocalSpec& spec, const DiagData& d) {
  auto r = local_integral_explicit(spec, d);
  if (auto* v = std::get_if<LocalIntegralValue>(&r)) return *v;
  // The integrand sees a mod p^beta and b, c mod p^alpha only.
  const std::int64_t mb = ipow64(spec.p, d.beta), ma = ipow64(spec.p, d.alpha);
  const std::string key = std::to_string(spec.p) + "/" + std::to_string(spec.tau) + "/" + std::to_string(spec.t) + "/" +
                          std::to_string(d.alpha) + "/" + std::to_string(mod(d.sigmaU.a(), mb)) + "/" +
                          std::to_string(mod(d.sigmaU.b(), ma)) + "/" + std::to_string(mod(d.sigmaU.c(), ma));
  static std::mutex mu;
  static std::map<std::string, LocalIntegralValue> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  LocalIntegralValue v = local_integral_oracle(spec, d, 0);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, v);
  return v;
}

Rat trivial_bound(const LocalSpec& spec, const DiagData& d) { return rpow(spec.p, spec.tau + d.alpha); }

Rat trivial_bound_general(long p, int tau, const std::vector<int>& alphas) {
  long e = 0;
  for (size_t j = 0; j < alphas.size(); ++j) e += static_cast<long>(j + 1) * (tau - alphas[j]);
  return rpow(p, e);
}

double conj_exponent(const LocalSpec& s, double eps) {
  return (1.0 - eps) * (1.5 * s.tau - s.t) - eps * s.tau;
}

double conj_constant(long p, int tau_max, double eps) {
  double C = 1.0;
  for (int tau = 0; tau <= tau_max; ++tau)
    for (int t = 0; 2 * t <= tau; ++t)
      for (int al = 0; 2 * al <= tau; ++al) {
        const double e = tau + al - conj_exponent({p, tau, t}, eps);
        C = std::max(C, std::pow(static_cast<double>(p), e));
      }
  return C;
}

bool conj_bound_check(const LocalSpec& spec, const DiagData& d, const Rat& value, double Cp, double eps) {
  (void)d;
  const double lhs = std::fabs(value.get_d());
  const double rhs = Cp * std::pow(static_cast<double>(spec.p), conj_exponent(spec, eps));
  return lhs <= rhs * (1.0 + 1e-12);
}

double case34_constant(long p) { return 2.0 * static_cast<double>(p) * static_cast<double>(p); }

bool case34_bound_check(const LocalSpec& spec, const Rat& value) {
  const double rhs = case34_constant(spec.p) * std::pow(static_cast<double>(spec.p), 0.75 * spec.tau);
  return std::fabs(value.get_d()) <= rhs;
}

}  // namespace petersson
