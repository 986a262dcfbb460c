#include "petersson/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <stdexcept>

namespace petersson {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<long> addv(std::vector<long> a, const std::vector<long>& b, long s = 1) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

long weyl_order(int n) {
  long w = 1L << n;
  for (int i = 2; i <= n; ++i) w *= i;
  return w;
}

}  // namespace

LaurentElement LaurentElement::monomial(const Key& m, const Rat& c) {
  LaurentElement f(static_cast<int>(m.size()));
  f.add(m, c);
  return f;
}

Rat LaurentElement::coeff(const Key& m) const {
  auto it = c_.find(m);
  return it == c_.end() ? Rat(0) : it->second;
}

void LaurentElement::add(const Key& m, const Rat& c) {
  if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("Laurent key has the wrong rank");
  if (c == 0) return;
  auto [it, fresh] = c_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

bool LaurentElement::is_weyl_symmetric() const {
  for (const auto& w : weyl_group(n_))
    for (const auto& [m, c] : c_)
      if (coeff(w.act_nu(m)) != c) return false;
  return true;
}

LaurentElement LaurentElement::operator+(const LaurentElement& o) const {
  LaurentElement r = *this;
  for (const auto& [m, c] : o.c_) r.add(m, c);
  return r;
}

LaurentElement LaurentElement::operator-(const LaurentElement& o) const {
  LaurentElement r = *this;
  for (const auto& [m, c] : o.c_) r.add(m, -c);
  return r;
}

LaurentElement LaurentElement::operator*(const LaurentElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("rank mismatch");
  LaurentElement r(n_);
  for (const auto& [m, c] : c_)
    for (const auto& [m2, c2] : o.c_) r.add(addv(m, m2), c * c2);
  return r;
}

LaurentElement LaurentElement::shifted(const Key& v) const {
  LaurentElement r(n_);
  for (const auto& [m, c] : c_) r.c_.emplace(addv(m, v), c);
  return r;
}

bool LaurentElement::divide_by_root_binomial(const std::vector<long>& a_nu, LaurentElement& q) const {
  const std::vector<long> v = addv(a_nu, a_nu);  // doubled shift of e^{a}
  size_t i0 = 0;
  while (i0 < v.size() && v[i0] == 0) ++i0;
  if (i0 == v.size()) throw std::invalid_argument("zero root");
  // line base -> (position -> coefficient)
  std::map<Key, std::map<long, Rat>> lines;
  for (const auto& [m, c] : c_) {
    const long s = floor_div(m[i0], v[i0]);
    lines[addv(m, v, -s)][s] = c;
  }
  q = LaurentElement(n_);
  for (const auto& [base, pts] : lines) {
    const long lo = pts.begin()->first, hi = pts.rbegin()->first;
    Rat g = 0;
    for (long s = lo; s <= hi; ++s) {
      auto it = pts.find(s);
      if (it != pts.end()) g -= it->second;
      if (s == hi) {
        if (g != 0) return false;
      } else {
        q.add(addv(base, v, s), g);
      }
    }
  }
  return true;
}

TorusPoint TorusPoint::from_angles(const std::vector<double>& phi) {
  TorusPoint t;
  for (double a : phi) t.z.push_back(std::polar(1.0, 2 * std::numbers::pi * a));
  return t;
}

TorusPoint TorusPoint::identity(int n) {
  TorusPoint t;
  t.z.assign(static_cast<size_t>(n), 1.0);
  return t;
}

TorusPoint TorusPoint::conjugate() const {
  TorusPoint t = *this;
  for (auto& x : t.z) x = std::conj(x);
  return t;
}

std::complex<double> eval_monomial(const LaurentElement::Key& m, const TorusPoint& t) {
  if (m.size() != t.z.size()) throw std::invalid_argument("torus point has the wrong rank");
  std::complex<double> v = std::pow(t.z[0], static_cast<int>(m[0]));
  for (size_t k = 1; k < m.size(); ++k) {
    const long e = m[0] - m[k];
    if (e % 2 != 0) throw std::invalid_argument("weight outside the lattice");
    v *= std::pow(t.z[k], static_cast<int>(e / 2));
  }
  return v;
}

std::complex<double> eval(const LaurentElement& f, const TorusPoint& t) {
  std::complex<double> s = 0;
  for (const auto& [m, c] : f.terms()) s += c.get_d() * eval_monomial(m, t);
  return s;
}

LaurentElement alternating_sum(const std::vector<long>& two_nu) {
  LaurentElement f(static_cast<int>(two_nu.size()));
  for (const auto& w : weyl_group(static_cast<int>(two_nu.size()))) f.add(w.act_nu(two_nu), Rat(w.sign()));
  return f;
}

LaurentElement alternating_sum(const Coweight& mu) { return alternating_sum(mu.two_nu()); }

LaurentElement weyl_character(const Coweight& lam) {
  if (!is_dominant(lam)) throw std::invalid_argument("weyl_character needs a dominant coweight");
  const int n = lam.n();
  LaurentElement f = alternating_sum(addv(lam.two_nu(), rho_vee(n).two_nu()));
  for (const auto& a : positive_coroots_nu(n)) {
    LaurentElement q;
    if (!f.shifted(a).divide_by_root_binomial(a, q)) throw std::logic_error("Weyl character division left a remainder");
    f = std::move(q);
  }
  return f;
}

std::complex<double> char_eval(const LaurentElement& chi, const Coweight& lam, const TorusPoint& t) {
  const int n = lam.n();
  const auto den = eval(alternating_sum(rho_vee(n)), t);
  if (std::abs(den) > 1e-6) return eval(alternating_sum(addv(lam.two_nu(), rho_vee(n).two_nu())), t) / den;
  return eval(chi, t);
}

std::complex<double> char_eval(const Coweight& lam, const TorusPoint& t) {
  const int n = lam.n();
  const auto den = eval(alternating_sum(rho_vee(n)), t);
  if (std::abs(den) > 1e-6) return eval(alternating_sum(addv(lam.two_nu(), rho_vee(n).two_nu())), t) / den;
  return eval(weyl_character(lam), t);
}

double sato_tate_density(const TorusPoint& t) { return std::norm(eval(alternating_sum(rho_vee(t.n())), t)); }

double sato_tate_density_adjoint(const TorusPoint& t) {
  double d = 1;
  for (const auto& a : positive_coroots_nu(t.n())) {
    const auto m = addv(a, a);
    d *= std::abs(eval_monomial(m, t) - 1.0) * std::abs(eval_monomial(addv(m, m, -2), t) - 1.0);
  }
  return d;
}

Rat kostant_phat(const std::vector<long>& nu, long p) {
  const auto counts = coroot_expression_counts(nu);
  Rat s = 0;
  for (size_t m = 0; m < counts.size(); ++m) s += Rat(counts[m]) * rpow(p, -static_cast<long>(m));
  return s;
}

Rat kostant_phat(const Coweight& mu, long p) {
  auto tn = mu.two_nu();
  for (long& x : tn) {
    if (x % 2 != 0) return 0;
    x /= 2;
  }
  return kostant_phat(tn, p);
}

Rat kl_poly(const Coweight& mu, const Coweight& lam, long p) {
  if (!is_dominant(mu) || !is_dominant(lam)) throw std::invalid_argument("kl_poly needs dominant coweights");
  if (!leq(mu, lam)) throw std::invalid_argument("kl_poly needs mu <= lambda");
  const int n = lam.n();
  const auto rv = rho_vee(n).two_nu();
  const auto lr = addv(lam.two_nu(), rv), mr = addv(mu.two_nu(), rv);
  Rat s = 0;
  for (const auto& w : weyl_group(n)) {
    auto d = addv(w.act_nu(lr), mr, -1);
    bool integral = true;
    for (long& x : d) {
      if (x % 2 != 0) integral = false;
      x /= 2;
    }
    if (!integral) continue;
    s += w.sign() * kostant_phat(d, p);
  }
  const Rat e = rho_pair(lam) - rho_pair(mu);
  if (e.get_den() != 1) throw std::logic_error("<lambda - mu, rho> is not integral");
  return s * rpow(p, e.get_num().get_si());
}

std::map<Coweight, Rat> kl_row(const Coweight& lam, long p) {
  if (!is_dominant(lam)) throw std::invalid_argument("kl_row needs dominant lambda");
  std::map<Coweight, Rat> out;
  for (const auto& mu : dominant_coweights(lam.n(), lam.ell0()))
    if (leq(mu, lam)) out.emplace(mu, kl_poly(mu, lam, p));
  return out;
}

std::map<Coweight, double> kato_lusztig_expand(const Coweight& lam, long p) {
  const double scale = std::pow(static_cast<double>(p), -rho_pair(lam).get_d());
  std::map<Coweight, double> out;
  for (const auto& [mu, c] : kl_row(lam, p)) out.emplace(mu, c.get_d() * scale);
  return out;
}

double ScaledRational::value() const {
  double v = q.get_d();
  for (const auto& [p, e] : powers) v *= std::pow(static_cast<double>(p), e.get_d());
  return v;
}

bool ScaledRational::exactly_one() const {
  if (q != 1) return false;
  for (const auto& pe : powers)
    if (pe.second != 0) return false;
  return true;
}

LValueFn default_l_values(const HalfIntegralSymMat& sigma, int kappa) {
  return [sigma, kappa](const SimilitudeSpec& s) { return normalized_L(sigma, s, kappa); };
}

ScaledRational L_of_F(const std::vector<PrimeSpec>& lams, const LValueFn& lvals) {
  std::vector<std::vector<std::pair<Coweight, Rat>>> exp;
  ScaledRational res;
  for (const auto& ps : lams) {
    const auto m = kl_row(ps.lam, ps.p);
    exp.emplace_back(m.begin(), m.end());
    res.powers.emplace_back(ps.p, -rho_pair(ps.lam));
  }
  Rat total = 0;
  std::vector<size_t> idx(lams.size(), 0);
  while (true) {
    SimilitudeSpec spec;
    Rat coef = 1;
    for (size_t i = 0; i < lams.size(); ++i) {
      spec.primes.push_back({lams[i].p, exp[i][idx[i]].first});
      coef *= exp[i][idx[i]].second;
    }
    total += coef * lvals(spec);
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == exp[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  res.q = total;
  return res;
}

ScaledRational L_of_F(const std::vector<PrimeSpec>& lams, const HalfIntegralSymMat& sigma, int kappa) {
  return L_of_F(lams, default_l_values(sigma, kappa));
}

double tail_bound_n2(long p, int truncation, double eps) {
  // mu = (tau, 0, t) with tau = 2t + s has <mu, rho> = 2t + 3s / 2; summing the
  // region 2t + s > truncation term by term avoids cancellation.
  const double q = std::pow(static_cast<double>(p), -eps);
  const double q15 = std::pow(q, 1.5);
  const int L = truncation, T = truncation / 2;
  double s = 0;
  for (int t = 0; t <= T; ++t) s += std::pow(q, 2.0 * t) * std::pow(q15, L - 2 * t + 1);
  s += std::pow(q, 2.0 * (T + 1)) / (1 - q * q);
  return 64.0 * 16.0 * s / (1 - q15);
}

MeasureExpansion measure_expansion(const DensityOptions& opt, const LValueFn& raw_lvals) {
  if (opt.primes.empty()) throw std::invalid_argument("density needs at least one prime");
  // each L(prod S(c_mu)) is needed once per lambda >= mu
  std::map<std::string, Rat> memo;
  const LValueFn lvals = [&](const SimilitudeSpec& s) {
    std::string key;
    for (const auto& ps : s.primes) key += std::to_string(ps.p) + ":" + ps.lam.str() + ";";
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, raw_lvals(s)).first;
    return it->second;
  };
  const auto lams = dominant_coweights(2, opt.truncation);
  MeasureExpansion ex;
  std::vector<size_t> idx(opt.primes.size(), 0);
  while (true) {
    std::vector<PrimeSpec> ps;
    std::vector<Coweight> tuple;
    for (size_t i = 0; i < idx.size(); ++i) {
      ps.push_back({opt.primes[i], lams[idx[i]]});
      tuple.push_back(lams[idx[i]]);
    }
    ex.coeffs.emplace_back(tuple, L_of_F(ps, lvals));
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == lams.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  // prod (a_i + b_i) - prod a_i = sum_i b_i prod_{j < i} a_j prod_{j > i} (a_j + b_j)
  std::vector<double> a, b;
  for (long p : opt.primes) {
    const double q = std::pow(static_cast<double>(p), -opt.eps);
    double pp = 0;
    for (int tau = 0; tau <= opt.truncation; ++tau)
      for (int s = 0; 2 * s <= tau; ++s) pp += std::pow(q, 1.5 * tau - s);
    a.push_back(pp);
    b.push_back(tail_bound_n2(p, opt.truncation, opt.eps) / 1024.0);
  }
  double tail = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double term = b[i];
    for (size_t j = 0; j < a.size(); ++j)
      if (j != i) term *= j < i ? a[j] : a[j] + b[j];
    tail += term;
  }
  ex.tail_bound = std::pow(1024.0, static_cast<double>(opt.primes.size())) * tail;
  return ex;
}

DensityReport density_samples(const DensityOptions& opt, const LValueFn& lvals) {
  DensityReport rep;
  rep.expansion = measure_expansion(opt, lvals);
  const auto lams = dominant_coweights(2, opt.truncation);
  std::map<Coweight, LaurentElement> chars;
  for (const auto& l : lams) chars.emplace(l, weyl_character(l));
  const LaurentElement arho = alternating_sum(rho_vee(2));
  const size_t k = opt.primes.size();
  const int g = opt.grid;
  const size_t dims = 2 * k;
  size_t total = 1;
  for (size_t i = 0; i < dims; ++i) total *= static_cast<size_t>(g);
  double acc = 0;
  for (size_t lin = 0; lin < total; ++lin) {
    std::vector<double> ang(dims);
    size_t r = lin;
    for (size_t i = 0; i < dims; ++i) {
      ang[i] = static_cast<double>(r % g) / g;
      r /= g;
    }
    std::vector<TorusPoint> pts;
    double w = 1;
    for (size_t i = 0; i < k; ++i) {
      pts.push_back(TorusPoint::from_angles({ang[2 * i], ang[2 * i + 1]}));
      w *= std::norm(eval(arho, pts.back())) / 8.0;
    }
    std::complex<double> d = 0;
    for (const auto& [tuple, c] : rep.expansion.coeffs) {
      std::complex<double> f = 1;
      for (size_t i = 0; i < k; ++i) f *= std::conj(eval(chars.at(tuple[i]), pts[i]));
      d += c.value() * f;
    }
    rep.samples.push_back({ang, d.real(), d.imag()});
    rep.max_imag = std::max(rep.max_imag, std::abs(d.imag()));
    rep.max_dev = std::max(rep.max_dev, std::abs(d - 1.0));
    acc += w * d.real();
  }
  rep.st_integral = acc / static_cast<double>(total);
  return rep;
}

std::complex<double> orthonormality_check(const Coweight& lam, const Coweight& mu, int grid) {
  if (lam.n() != mu.n()) throw std::invalid_argument("rank mismatch");
  const int n = lam.n();
  const LaurentElement fl = weyl_character(lam), fm = weyl_character(mu), ar = alternating_sum(rho_vee(n));
  const double W = static_cast<double>(weyl_order(n));
  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<size_t>(grid);
  std::complex<double> acc = 0;
  for (size_t lin = 0; lin < total; ++lin) {
    std::vector<double> ang(static_cast<size_t>(n));
    size_t r = lin;
    for (int i = 0; i < n; ++i) {
      ang[i] = static_cast<double>(r % grid) / grid;
      r /= grid;
    }
    const TorusPoint t = TorusPoint::from_angles(ang);
    acc += eval(fl, t) * std::conj(eval(fm, t)) * std::norm(eval(ar, t)) / W;
  }
  return acc / static_cast<double>(total);
}

}  // namespace petersson
