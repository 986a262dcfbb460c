#include "petersson/root_data.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace petersson {

namespace {

void check_len(size_t a, size_t b) {
  if (a != b) throw std::invalid_argument("tuple length mismatch");
}

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

bool Character::is_pgsp() const {
  long s = 2 * k.at(0);
  for (size_t i = 1; i < k.size(); ++i) s += k[i];
  return s == 0;
}

Coweight::Coweight(std::vector<long> raw) : ell_(std::move(raw)) {
  if (ell_.size() < 2) throw std::invalid_argument("coweight needs n >= 1");
  const long l1 = ell_[1];
  ell_[0] -= 2 * l1;
  for (size_t i = 1; i < ell_.size(); ++i) ell_[i] -= l1;
}

Coweight Coweight::from_two_nu(const std::vector<long>& tn) {
  if (tn.empty()) throw std::invalid_argument("empty nu vector");
  const long l0 = tn[0];
  std::vector<long> e(tn.size() + 1);
  e[0] = l0;
  for (size_t i = 0; i < tn.size(); ++i) {
    const long d = l0 - tn[i];
    if (d % 2 != 0) throw std::invalid_argument("nu entries of mixed parity");
    e[i + 1] = d / 2;
  }
  return Coweight(std::move(e));
}

std::vector<long> Coweight::two_nu() const {
  std::vector<long> t(n());
  for (int i = 1; i <= n(); ++i) t[i - 1] = ell_[0] - 2 * ell_[i];
  return t;
}

bool Coweight::is_zero() const {
  return std::all_of(ell_.begin(), ell_.end(), [](long x) { return x == 0; });
}

std::string Coweight::str() const { return join(ell_); }

WeylElement::WeylElement(std::vector<int> perm, std::vector<bool> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  check_len(perm_.size(), signs_.size());
  std::vector<int> s = perm_;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i] != i) throw std::invalid_argument("not a permutation");
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(p, std::vector<bool>(n, false));
}

WeylElement WeylElement::sign_flip(int n, int i) {
  WeylElement w = identity(n);
  w.signs_.at(i - 1) = true;
  return w;
}

WeylElement WeylElement::permutation(std::vector<int> perm) {
  const size_t n = perm.size();
  return WeylElement(std::move(perm), std::vector<bool>(n, false));
}

int WeylElement::sign() const {
  int s = 1;
  std::vector<bool> seen(perm_.size(), false);
  for (size_t i = 0; i < perm_.size(); ++i) {
    if (signs_[i]) s = -s;
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = perm_[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

WeylElement WeylElement::compose(const WeylElement& inner) const {
  check_len(perm_.size(), inner.perm_.size());
  const int m = n();
  std::vector<int> p(m);
  std::vector<bool> s(m);
  for (int i = 0; i < m; ++i) {
    p[i] = perm_[inner.perm_[i]];
    s[i] = signs_[inner.perm_[i]] != inner.signs_[i];
  }
  return WeylElement(p, s);
}

WeylElement WeylElement::inverse() const {
  const int m = n();
  std::vector<int> p(m);
  std::vector<bool> s(m);
  for (int i = 0; i < m; ++i) {
    p[perm_[i]] = i;
    s[perm_[i]] = signs_[i];
  }
  return WeylElement(p, s);
}

std::vector<long> WeylElement::act_nu(const std::vector<long>& nu) const {
  check_len(nu.size(), perm_.size());
  std::vector<long> out(nu.size());
  for (size_t i = 0; i < nu.size(); ++i) out[perm_[i]] = signs_[i] ? -nu[i] : nu[i];
  return out;
}

std::string WeylElement::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n(); ++i) os << (i ? "," : "") << (signs_[i] ? "-" : "+") << perm_[i] + 1;
  os << ']';
  return os.str();
}

Rat pair_raw(const std::vector<long>& k, const std::vector<long>& ell, bool halved) {
  check_len(k.size(), ell.size());
  Int s = 0;
  for (size_t i = 0; i < k.size(); ++i) s += Int(k[i]) * Int(ell[i]);
  if (!halved) return Rat(s);
  Rat q(s, 2);
  q.canonicalize();
  return q;
}

Rat pair(const Character& chi, const Coweight& lam) { return pair_raw(chi.k, lam.ell()); }

Rat pair(const HalfWeight& chi, const Coweight& lam) { return pair_raw(chi.two_chi, lam.ell(), true); }

long weyl_form(const Character& a, const Character& b) {
  check_len(a.k.size(), b.k.size());
  long s = 0;
  for (size_t i = 1; i < a.k.size(); ++i) s += a.k[i] * b.k[i];
  return s;
}

namespace {

// Shared linear action on k-type coordinates: flips first, then permutation.
std::vector<long> act_k(const WeylElement& w, std::vector<long> k) {
  check_len(k.size(), static_cast<size_t>(w.n()) + 1);
  for (int i = 0; i < w.n(); ++i)
    if (w.signs()[i]) {
      k[0] += k[i + 1];
      k[i + 1] = -k[i + 1];
    }
  std::vector<long> out(k.size());
  out[0] = k[0];
  for (int i = 0; i < w.n(); ++i) out[w.perm()[i] + 1] = k[i + 1];
  return out;
}

}  // namespace

Character weyl_apply(const WeylElement& w, const Character& chi) { return Character(act_k(w, chi.k)); }

HalfWeight weyl_apply(const WeylElement& w, const HalfWeight& chi) { return HalfWeight(act_k(w, chi.two_chi)); }

Coweight weyl_apply(const WeylElement& w, const Coweight& lam) {
  check_len(lam.ell().size(), static_cast<size_t>(w.n()) + 1);
  std::vector<long> l = lam.ell();
  for (int i = 0; i < w.n(); ++i)
    if (w.signs()[i]) l[i + 1] = l[0] - l[i + 1];
  std::vector<long> out(l.size());
  out[0] = l[0];
  for (int i = 0; i < w.n(); ++i) out[w.perm()[i] + 1] = l[i + 1];
  return Coweight(std::move(out));
}

bool is_dominant(const Coweight& lam) {
  const auto& l = lam.ell();
  for (int i = 1; i < lam.n(); ++i)
    if (l[i] > l[i + 1]) return false;
  return 2 * l[lam.n()] <= l[0] && l[1] == 0;
}

std::pair<Coweight, WeylElement> dominant_rep(const Coweight& lam) {
  const auto tn = lam.two_nu();
  const int n = lam.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::labs(tn[a]) > std::labs(tn[b]); });
  std::vector<int> perm(n);
  std::vector<bool> signs(n);
  for (int pos = 0; pos < n; ++pos) {
    perm[order[pos]] = pos;
    signs[order[pos]] = tn[order[pos]] < 0;
  }
  WeylElement w(perm, signs);
  return {weyl_apply(w, lam), w};
}

std::vector<Character> positive_roots(int n) {
  std::vector<Character> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<long> k(n + 1, 0);
      k[j] = 1;
      k[i] = -1;
      out.emplace_back(k);
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::vector<long> k(n + 1, 0);
      k[0] = 1;
      k[i] -= 1;
      k[j] -= 1;
      out.emplace_back(k);
    }
  return out;
}

std::vector<Character> roots(int n) {
  std::vector<Character> out = positive_roots(n);
  const size_t m = out.size();
  for (size_t i = 0; i < m; ++i) {
    std::vector<long> k = out[i].k;
    for (auto& x : k) x = -x;
    out.emplace_back(k);
  }
  return out;
}

std::vector<Character> simple_roots(int n) {
  std::vector<Character> out;
  for (int j = 1; j < n; ++j) {
    std::vector<long> k(n + 1, 0);
    k[j + 1] = 1;
    k[j] = -1;
    out.emplace_back(k);
  }
  std::vector<long> k(n + 1, 0);
  k[0] = 1;
  k[n] = -2;
  out.emplace_back(k);
  return out;
}

Coweight coroot(const Character& alpha) {
  // (e_j - e_i)^v = f_j - f_i, (e0 - e_i - e_j)^v = -f_i - f_j, (e0 - 2e_j)^v = -f_j:
  // in every case the coroot is (0, k1, ..., kn), halved for the long roots.
  const int n = alpha.n();
  bool has_two = false;
  for (int i = 1; i <= n; ++i)
    if (std::labs(alpha.k[i]) == 2) has_two = true;
  std::vector<long> l(n + 1, 0);
  for (int i = 1; i <= n; ++i) l[i] = has_two ? alpha.k[i] / 2 : alpha.k[i];
  return Coweight(std::move(l));
}

std::vector<Coweight> positive_coroots(int n) {
  std::vector<Coweight> out;
  for (const auto& a : positive_roots(n)) out.push_back(coroot(a));
  return out;
}

std::vector<std::vector<long>> positive_coroots_nu(int n) {
  std::vector<std::vector<long>> out;
  for (const auto& c : positive_coroots(n)) {
    auto tn = c.two_nu();
    for (auto& x : tn) x /= 2;
    out.push_back(tn);
  }
  return out;
}

HalfWeight rho(int n) {
  std::vector<long> t(n + 1);
  t[0] = n * (n + 1) / 2;  // 2 * n(n+1)/4
  for (int i = 1; i <= n; ++i) t[i] = -2L * (n + 1 - i);
  return HalfWeight(t);
}

Coweight rho_vee(int n) {
  std::vector<long> tn(n);
  for (int i = 0; i < n; ++i) tn[i] = 2L * (n - i) - 1;
  return Coweight::from_two_nu(tn);
}

std::vector<long> relation_vector(int n) {
  std::vector<long> v(n + 1, 1);
  v[0] = 2;
  return v;
}

std::vector<WeylElement> weyl_group(int n) {
  std::vector<WeylElement> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> s(n);
      for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1u;
      out.emplace_back(p, s);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Rat rho_pair(const Coweight& lam) { return pair(rho(lam.n()), lam); }

std::vector<Int> coroot_expression_counts(const std::vector<long>& nu_diff) {
  const int n = static_cast<int>(nu_diff.size());
  const auto cor = positive_coroots_nu(n);
  auto height = [n](const std::vector<long>& v) {
    long h = 0;
    for (int i = 0; i < n; ++i) h += (n - i) * v[i];
    return h;
  };
  std::vector<long> heights;
  for (const auto& c : cor) heights.push_back(height(c));
  const long h0 = height(nu_diff);
  if (h0 < 0) return {};
  // memo[(index, remainder)] -> counts by number of terms used from index on
  using Key = std::pair<size_t, std::vector<long>>;
  std::map<Key, std::vector<Int>> memo;
  std::function<std::vector<Int>(size_t, const std::vector<long>&)> rec =
      [&](size_t idx, const std::vector<long>& rem) -> std::vector<Int> {
    if (idx == cor.size()) {
      for (long x : rem)
        if (x != 0) return {};
      return {Int(1)};
    }
    Key key{idx, rem};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Int> acc;
    std::vector<long> r = rem;
    const long h = height(rem);
    for (long c = 0; c * heights[idx] <= h; ++c) {
      auto sub = rec(idx + 1, r);
      if (acc.size() < sub.size() + c) acc.resize(sub.size() + c);
      for (size_t m = 0; m < sub.size(); ++m) acc[m + c] += sub[m];
      for (int i = 0; i < n; ++i) r[i] -= cor[idx][i];
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    memo.emplace(std::move(key), acc);
    return acc;
  };
  return rec(0, nu_diff);
}

bool leq(const Coweight& mu, const Coweight& lam) {
  check_len(mu.ell().size(), lam.ell().size());
  const auto a = lam.two_nu();
  const auto b = mu.two_nu();
  std::vector<long> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    const long x = a[i] - b[i];
    if (x % 2 != 0) return false;
    d[i] = x / 2;
  }
  return !coroot_expression_counts(d).empty();
}

std::vector<Coweight> dominant_coweights(int n, long max_l0) {
  std::vector<Coweight> out;
  for (long l0 = 0; l0 <= max_l0; ++l0) {
    std::vector<long> l(n + 1, 0);
    l[0] = l0;
    std::function<void(int, long)> rec = [&](int i, long lo) {
      if (i > n) {
        out.emplace_back(l);
        return;
      }
      for (long v = lo; 2 * v <= l0; ++v) {
        l[i] = v;
        rec(i + 1, v);
      }
    };
    l[1] = 0;
    rec(2, 0);
  }
  return out;
}

}  // namespace petersson
