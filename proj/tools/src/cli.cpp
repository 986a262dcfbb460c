#include "petersson_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <initializer_list>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "petersson/arch_coeff.hpp"
#include "petersson/error_bound.hpp"
#include "petersson/geom_side.hpp"
#include "petersson/local_gsp4.hpp"
#include "petersson/padic_cartan.hpp"

namespace petersson::cli {

namespace {

void dump_rec(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_rec(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad_in;
        dump_rec(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Int int_of_json(const json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

IntMat mat_of_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string(what) + " must be a nonempty array of rows");
  const int r = static_cast<int>(j.size());
  const int c = static_cast<int>(j[0].size());
  IntMat M(r, c);
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c)
      throw std::invalid_argument(std::string(what) + " rows must have equal length");
    for (int k = 0; k < c; ++k) M(i, k) = int_of_json(j[i][k]);
  }
  return M;
}

json mat_json(const IntMat& M) {
  json a = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < M.cols(); ++k) row.push_back(int_json(M(i, k)));
    a.push_back(row);
  }
  return a;
}

HalfIntegralSymMat sigma_of(const json& cfg, const char* key) {
  return HalfIntegralSymMat(mat_of_json(cfg.at(key), key));
}

json coweight_json(const Coweight& c) { return c.ell(); }

Coweight coweight_of_json(const json& j) { return Coweight(j.get<std::vector<long>>()); }

SimilitudeSpec spec_of(const json& cfg) {
  SimilitudeSpec s;
  for (const auto& e : cfg.at("primes")) s.primes.push_back({e.at("p").get<long>(), coweight_of_json(e.at("lambda"))});
  s.validate();
  return s;
}

json spec_json(const SimilitudeSpec& s) {
  json a = json::array();
  for (const auto& ps : s.primes) a.push_back({{"p", ps.p}, {"lambda", coweight_json(ps.lam)}});
  return a;
}

json local_value_json(const LocalIntegralValue& v) {
  return {{"value", rat_json(v.value)}, {"provenance", provenance_name(v.provenance)}, {"approx", to_double(v.value)}};
}

json scaled_json(const ScaledRational& s) {
  json pw = json::array();
  for (const auto& [p, e] : s.powers) pw.push_back({{"p", p}, {"exponent", rat_json(e)}});
  return {{"q", rat_json(s.q)}, {"powers", pw}, {"approx", s.value()}};
}

std::optional<LValueCache> make_cache(const json& cfg) {
  const auto d = cfg.value("cache_dir", std::string());
  if (d.empty()) return std::nullopt;
  return std::optional<LValueCache>(std::in_place, d);
}

// --- subcommands ---

json cmd_enumerate(const json& cfg) {
  const auto s1 = sigma_of(cfg, "sigma"), s2 = sigma_of(cfg, "sigma2");
  Int r = 1;
  if (cfg.contains("r"))
    r = int_of_json(cfg["r"]);
  else if (!cfg["primes"].empty())
    r = spec_of(cfg).r();
  const auto sols = enumerate_A(s1, s2, r);
  json js = json::array();
  for (const auto& A : sols) js.push_back(mat_json(A));
  return {{"r", int_json(r)}, {"count", sols.size()}, {"solutions", js}};
}

json cmd_arch(const json& cfg) {
  const auto s1 = sigma_of(cfg, "sigma"), s2 = sigma_of(cfg, "sigma2");
  const int kappa = cfg.at("kappa").get<int>();
  json out = {{"kappa", kappa},
              {"closed_form", static_cast<double>(arch_factor(s1, s2, kappa))},
              {"log_closed_form", static_cast<double>(log_arch_factor(s1, s2, kappa))}};
  if (cfg.value("quadrature", false)) {
    const IntMat A = cfg.contains("A") ? mat_of_json(cfg["A"], "A") : IntMat::identity(s1.n());
    const Int r = cfg.contains("r") ? int_of_json(cfg["r"]) : Int(1);
    ArchQuadratureOptions opt;
    opt.half_width = cfg.value("half_width", opt.half_width);
    const auto q = arch_factor_quadrature_n2(s1, A, r, kappa, opt);
    out["quadrature"] = {{"re", q.value.real()}, {"im", q.value.imag()}, {"abs_integral", q.abs_integral},
                         {"cells_used", q.cells_used}, {"cells_skipped", q.cells_skipped},
                         {"A", mat_json(A)}, {"r", int_json(r)}};
  }
  return out;
}

json cmd_local(const json& cfg) {
  const json& L = cfg.at("local");
  LocalSpec spec{L.at("p").get<long>(), L.at("tau").get<int>(), L.at("t").get<int>()};
  DiagData d;
  if (L.contains("A")) {
    d = reduce_to_diagonal(mat_of_json(L["A"], "local.A"), sigma_of(cfg, "sigma"), spec.p, spec.tau);
  } else {
    d.alpha = L.at("alpha").get<int>();
    d.beta = L.contains("beta") ? L["beta"].get<int>() : spec.tau - d.alpha;
    d.sigmaU = L.contains("sigmaU") ? HalfIntegralSymMat(mat_of_json(L["sigmaU"], "local.sigmaU"))
                                    : sigma_of(cfg, "sigma");
  }
  validate_local(spec, d);
  const std::string mode = cfg.at("mode").get<std::string>();
  const int margin = cfg.at("margin").get<int>();
  json out = {{"p", spec.p}, {"tau", spec.tau}, {"t", spec.t}, {"alpha", d.alpha}, {"beta", d.beta},
              {"sigmaU", mat_json(d.sigmaU.two_sigma())}, {"mode", mode},
              {"trivial_bound", rat_json(trivial_bound(spec, d))}};
  std::optional<Rat> ev, ov;
  if (mode == "explicit" || mode == "both") {
    const auto e = local_integral_explicit(spec, d);
    if (const auto* v = std::get_if<LocalIntegralValue>(&e)) {
      out["explicit"] = local_value_json(*v);
      ev = v->value;
    } else {
      out["explicit"] = {{"not_covered", std::get<NotCovered>(e).reason}};
    }
  }
  if (mode == "oracle" || mode == "both") {
    OracleStats st;
    const auto o = local_integral_oracle(spec, d, margin, &st);
    out["oracle"] = local_value_json(o);
    out["oracle"]["level"] = st.level;
    out["oracle"]["evaluations"] = st.evaluations;
    ov = o.value;
  }
  if (mode == "both") out["match"] = ev ? json(*ev == *ov) : json(nullptr);
  const json& primary = ov ? out["oracle"] : out["explicit"];
  if (primary.contains("value")) {
    out["value"] = primary["value"];
    out["provenance"] = primary["provenance"];
  }
  return out;
}

json cmd_geometric(const json& cfg) {
  const auto s1 = sigma_of(cfg, "sigma"), s2 = sigma_of(cfg, "sigma2");
  const auto spec = spec_of(cfg);
  const int kappa = cfg.at("kappa").get<int>();
  const auto g = geometric_side(s1, s2, spec, kappa);
  json terms = json::array();
  for (const auto& t : g.terms) {
    json loc = json::object();
    for (const auto& [p, v] : t.locals) loc[std::to_string(p)] = local_value_json(v);
    terms.push_back({{"A", mat_json(t.A)}, {"I_inf", static_cast<double>(t.arch)}, {"locals", loc},
                     {"local_product", rat_json(t.local_product)}});
  }
  return {{"sigma1", mat_json(s1.two_sigma())}, {"sigma2", mat_json(s2.two_sigma())}, {"kappa", kappa},
          {"r", int_json(g.r)}, {"primes", spec_json(spec)}, {"terms", terms},
          {"total", static_cast<double>(g.total)}};
}

json cmd_normalized(const json& cfg) {
  const auto s = sigma_of(cfg, "sigma");
  const auto spec = spec_of(cfg);
  const int kappa = cfg.at("kappa").get<int>();
  auto cache = make_cache(cfg);
  const Rat v = cache ? cache->wrap(s, kappa)(spec) : normalized_L(s, spec, kappa);
  json out = {{"primes", spec_json(spec)}, {"value", rat_json(v)}, {"approx", to_double(v)}};
  if (cache) out["cache"] = {{"hits", cache->hits()}, {"misses", cache->misses()}};
  return out;
}

CommandOutput cmd_density(const json& cfg) {
  const auto s = sigma_of(cfg, "sigma");
  const int kappa = cfg.at("kappa").get<int>();
  const json& D = cfg.at("density");
  DensityOptions opt;
  opt.primes = D.at("primes").get<std::vector<long>>();
  opt.truncation = D.at("truncation").get<int>();
  opt.grid = D.at("grid").get<int>();
  opt.eps = D.at("eps").get<double>();
  for (long p : opt.primes)
    if (s.det_two_sigma() % p == 0) throw UnsupportedRegime("p divides 4 det sigma for p = " + std::to_string(p));
  auto cache = make_cache(cfg);
  const auto rep = density_samples(opt, cache ? cache->wrap(s, kappa) : default_l_values(s, kappa));
  CommandOutput co;
  json coeffs = json::array();
  for (const auto& [tuple, c] : rep.expansion.coeffs) {
    json lt = json::array();
    for (const auto& l : tuple) lt.push_back(coweight_json(l));
    coeffs.push_back({{"lambda", lt}, {"L", scaled_json(c)}});
  }
  co.result = {{"primes", opt.primes}, {"truncation", opt.truncation}, {"grid", opt.grid}, {"eps", opt.eps},
               {"coefficients", coeffs}, {"tail_bound", rep.expansion.tail_bound},
               {"max_imag", rep.max_imag}, {"max_dev", rep.max_dev}, {"st_integral", rep.st_integral},
               {"samples", rep.samples.size()}};
  if (cfg.at("format") == "csv" || cfg.contains("csv")) {
    std::ostringstream os;
    const size_t dims = 2 * opt.primes.size();
    for (size_t i = 0; i < dims; ++i) os << "phi" << i << ',';
    os << "density,imag,tail_bound\n";
    char buf[40];
    const auto num = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    for (const auto& smp : rep.samples) {
      for (double a : smp.angles) os << num(a) << ',';
      os << num(smp.density) << ',' << num(smp.imag) << ',' << num(rep.expansion.tail_bound) << '\n';
    }
    co.csv = os.str();
  }
  if (cfg.at("format") == "json") {
    json samples = json::array();
    for (const auto& smp : rep.samples)
      samples.push_back({{"angles", smp.angles}, {"density", smp.density}, {"imag", smp.imag}});
    co.result["sample_values"] = samples;
  }
  return co;
}

json cmd_characters(const json& cfg) {
  const int max_l0 = cfg.at("max_l0").get<int>();
  json cached = json::object();
  std::string cpath;
  if (const auto dir = cfg.value("cache_dir", std::string()); !dir.empty()) {
    std::filesystem::create_directories(dir);
    cpath = (std::filesystem::path(dir) / "characters.json").string();
    if (std::ifstream in(cpath); in) cached = json::parse(in, nullptr, false);
    if (cached.is_discarded()) cached = json::object();
  }
  json table = json::array();
  bool dirty = false;
  for (const auto& lam : dominant_coweights(2, max_l0)) {
    const std::string key = "n=2;lambda=" + lam.str();
    if (!cached.contains(key)) {
      const auto chi = weyl_character(lam);
      json terms = json::array();
      for (const auto& [m, c] : chi.terms()) terms.push_back({{"m", m}, {"c", rat_json(c)}});
      Rat dim = 0;
      for (const auto& [m, c] : chi.terms()) dim += c;
      cached[key] = {{"lambda", coweight_json(lam)}, {"dimension", rat_json(dim)}, {"terms", terms}};
      dirty = true;
    }
    table.push_back(cached[key]);
  }
  if (dirty && !cpath.empty()) {
    const std::string tmp = cpath + ".tmp";
    {
      std::ofstream o(tmp);
      o << canonical_dump(cached) << '\n';
    }
    std::filesystem::rename(tmp, cpath);
  }
  return {{"n", 2}, {"max_l0", max_l0}, {"characters", table}};
}

json cmd_error(const json& cfg) {
  const json& E = cfg.at("error");
  ErrorParams ep;
  ep.kappa = cfg.at("kappa").get<int>();
  ep.N = int_of_json(E.at("N"));
  ep.constant = E.at("constant").get<double>();
  json out;
  if (cfg.contains("r") && cfg["primes"].empty()) {
    ep.r = int_of_json(cfg["r"]);
    out["error_bound"] = static_cast<double>(off_diagonal_bound(ep));
    out["constant_caveat"] = true;
  } else {
    const auto spec = spec_of(cfg);
    ep.r = spec.r();
    const auto q = quantitative_formula(sigma_of(cfg, "sigma"), sigma_of(cfg, "sigma2"), spec, ep.kappa, ep.N,
                                        ep.constant);
    out["main"] = static_cast<double>(q.main);
    out["error_bound"] = static_cast<double>(q.error_bound);
    out["constant_caveat"] = q.constant_caveat;
  }
  out["log_error_bound"] = static_cast<double>(log_off_diagonal_bound(ep));
  out["kappa"] = ep.kappa;
  out["N"] = int_json(ep.N);
  out["r"] = int_json(ep.r);
  out["constant"] = ep.constant;
  if (E.contains("euler")) {
    const json& u = E["euler"];
    const auto ec = euler_sum_check(u.at("a").get<double>(), u.at("Delta").get<double>(),
                                    u.at("kappa").get<double>(), u.value("truncation", 2000L));
    out["euler"] = {{"lhs", ec.lhs}, {"rhs", ec.rhs}, {"holds", ec.holds}};
  }
  return out;
}

// Quick invariant suite; every check compares two independent routes.
json cmd_verify(const json& cfg) {
  std::mt19937_64 rng(cfg.at("seed").get<std::uint64_t>());
  json suites = json::array();
  bool all = true;
  const auto record = [&](const std::string& name, bool ok, json detail) {
    all = all && ok;
    suites.push_back({{"name", name}, {"passed", ok}, {"detail", std::move(detail)}});
  };

  {
    const long forms[3][3] = {{1, 0, 1}, {3, 2, 3}, {1, 1, 17}};
    long covered = 0, bad = 0, vanish_bad = 0;
    for (const auto& f : forms)
      for (int tau = 0; tau <= 4; ++tau)
        for (int t = 0; 2 * t <= tau; ++t)
          for (int al = 0; 2 * al <= tau; ++al) {
            const LocalSpec s{3, tau, t};
            const DiagData d{al, tau - al, HalfIntegralSymMat::binary(f[0], f[1], f[2])};
            const auto e = local_integral_explicit(s, d);
            if (const auto* v = std::get_if<LocalIntegralValue>(&e)) {
              ++covered;
              const Rat o = local_integral_oracle(s, d).value;
              if (o != v->value) ++bad;
              if (v->value == 0 && o != 0) ++vanish_bad;
            }
          }
    record("local_explicit_vs_oracle", bad == 0 && vanish_bad == 0 && covered > 0,
           {{"p", 3}, {"covered", covered}, {"mismatches", bad}});
  }
  {
    long cases = 0, bad = 0;
    for (int tau = 1; tau <= 3; ++tau)
      for (int t = 0; 2 * t <= tau; ++t)
        for (int al = 0; 2 * al <= tau; ++al) {
          const LocalSpec s{3, tau, t};
          const DiagData d{al, tau - al, HalfIntegralSymMat::binary(1, 0, 1)};
          ++cases;
          if (local_integral_bruteforce(s, d) != local_integral_oracle(s, d).value) ++bad;
        }
    record("oracle_vs_literal_sum", bad == 0, {{"cases", cases}, {"mismatches", bad}});
  }
  {
    long bad = 0, count = 0;
    for (const auto& lam : dominant_coweights(2, 6)) {
      ++count;
      const auto chi = weyl_character(lam);
      const auto at1 = char_eval(chi, lam, TorusPoint::identity(2));
      const double dimv = at1.real();
      if (!chi.is_weyl_symmetric() || dimv < 1 || std::abs(dimv - std::round(dimv)) > 1e-9) ++bad;
    }
    record("weyl_characters", bad == 0, {{"characters", count}, {"failures", bad}});
  }
  {
    double worst = 0;
    const auto lams = dominant_coweights(2, 2);
    for (const auto& a : lams)
      for (const auto& b : lams)
        worst = std::max(worst, std::abs(orthonormality_check(a, b, 16) - (a == b ? 1.0 : 0.0)));
    record("orthonormality", worst < 1e-9, {{"max_error", worst}});
  }
  {
    bool ok = lp_norm_closed(10, 2, 2) == Rat(4, 153);
    for (int k = 5; k <= 14; ++k) ok = ok && formal_degree(k, 2) * lp_norm_closed(k, 2, 2) == 1;
    record("formal_degree", ok, {{"lp_norm_10_2", rat_json(lp_norm_closed(10, 2, 2))}});
  }
  {
    long bad = 0;
    std::uniform_int_distribution<int> P(0, 2), L(0, 4);
    const long ps[3] = {2, 3, 5};
    for (int i = 0; i < 100; ++i) {
      const long p = ps[P(rng)];
      const long l0 = L(rng);
      std::uniform_int_distribution<long> T(0, l0 / 2);
      const Coweight lam({l0, 0, T(rng)});
      const IntMat k1 = random_integral_symplectic(2, rng(), 6), k2 = random_integral_symplectic(2, rng(), 6);
      const auto lab = classify_coset(k1 * lambda_matrix(lam, p) * k2, p);
      if (!(lab.lam == lam) || lab.r_exponent != l0) ++bad;
    }
    record("cartan_classification", bad == 0, {{"samples", 100}, {"failures", bad}});
  }
  {
    long bad = 0;
    for (long p : {2L, 3L, 5L})
      for (int m = 0; m <= 3; ++m) {
        const long pm = ipow64(p, static_cast<unsigned>(m));
        for (long l = -2 * pm; l <= 2 * pm; ++l) {
          double s = 0;
          for (long y = 0; y < pm; ++y)
            if (m == 0 || y % p != 0) s += std::cos(2 * std::numbers::pi * static_cast<double>(y * l) / static_cast<double>(pm));
          if (std::abs(s - ramanujan_sum(Int(l), p, m).get_d()) > 1e-6) ++bad;
        }
      }
    record("ramanujan_sums", bad == 0, {{"failures", bad}});
  }
  {
    long bad = 0;
    std::uniform_real_distribution<double> A(-3, 3), Dl(0.2, 5), K(2, 20);
    for (int i = 0; i < 100; ++i)
      if (!euler_sum_check(A(rng), Dl(rng), K(rng)).holds) ++bad;
    record("euler_summation", bad == 0, {{"samples", 100}, {"failures", bad}});
  }
  {
    long bad = 0;
    const auto I = HalfIntegralSymMat::identity(2);
    for (long r = 1; r <= 12; ++r) {
      const auto sols = enumerate_A(I, I, r);
      auto img = sols;
      for (auto& A : img) A = involution(A, r);
      std::sort(img.begin(), img.end(), [](const IntMat& a, const IntMat& b) { return a.str() < b.str(); });
      auto s2 = sols;
      std::sort(s2.begin(), s2.end(), [](const IntMat& a, const IntMat& b) { return a.str() < b.str(); });
      if (!(img == s2)) ++bad;
    }
    record("involution", bad == 0, {{"failures", bad}});
  }
  {
    const auto s = HalfIntegralSymMat::binary(1, 1, 2);
    const auto g = geometric_side(s, s, SimilitudeSpec{}, 10);
    const long double ref = static_cast<long double>(enumerate_A(s, s, 1).size()) * arch_factor(s, s, 10);
    const double rel = static_cast<double>(std::fabs(g.total - ref) / ref);
    record("empty_set_geometric_side", rel < 1e-12, {{"relative_error", rel}});
  }
  return {{"all_passed", all}, {"suites", suites}, {"seed", cfg.at("seed")}};
}

using Handler = CommandOutput (*)(const json&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"enumerate-a", [](const json& c) { return CommandOutput{cmd_enumerate(c), {}}; }},
      {"arch-factor", [](const json& c) { return CommandOutput{cmd_arch(c), {}}; }},
      {"local-integral", [](const json& c) { return CommandOutput{cmd_local(c), {}}; }},
      {"geometric-side", [](const json& c) { return CommandOutput{cmd_geometric(c), {}}; }},
      {"normalized-l", [](const json& c) { return CommandOutput{cmd_normalized(c), {}}; }},
      {"measure-density", cmd_density},
      {"characters", [](const json& c) { return CommandOutput{cmd_characters(c), {}}; }},
      {"verify", [](const json& c) { return CommandOutput{cmd_verify(c), {}}; }},
      {"error-bound", [](const json& c) { return CommandOutput{cmd_error(c), {}}; }},
  };
  return h;
}

std::vector<std::vector<long>> parse_rows(const std::string& s) {
  std::vector<std::vector<long>> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<long> r;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) r.push_back(std::stol(cell));
    rows.push_back(r);
  }
  return rows;
}

json parse_prime(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--prime expects p:l0,l1,l2");
  const auto rows = parse_rows(s.substr(colon + 1));
  if (rows.size() != 1) throw std::invalid_argument("--prime expects p:l0,l1,l2");
  return {{"p", std::stol(s.substr(0, colon))}, {"lambda", rows[0]}};
}

void require_keys(const json& obj, std::initializer_list<const char*> keys, const char* where) {
  for (const char* k : keys)
    if (!obj.contains(k)) throw std::invalid_argument(std::string(where) + " requires key '" + k + "'");
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string s;
  dump_rec(j, s, 0);
  return s;
}

json rat_json(const Rat& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Rat rat_of_json(const json& j) {
  Rat q(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
  q.canonicalize();
  return q;
}

LValueCache::LValueCache(std::string dir) {
  std::filesystem::create_directories(dir);
  path_ = (std::filesystem::path(dir) / "lvalues.json").string();
  load();
}

void LValueCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  json j = json::parse(in, nullptr, false);
  if (j.is_object()) data_ = std::move(j);
}

void LValueCache::store(const std::string& k, const Rat& v) {
  data_[k] = rat_json(v);
  const std::string tmp = path_ + ".tmp";
  {
    std::ofstream o(tmp);
    o << canonical_dump(data_) << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

std::string LValueCache::key(const HalfIntegralSymMat& sigma, int kappa, const SimilitudeSpec& spec) {
  std::string k = "n=" + std::to_string(sigma.n()) + ";sigma=" + sigma.str() + ";kappa=" + std::to_string(kappa) + ";S=";
  for (const auto& ps : spec.primes) k += std::to_string(ps.p) + ":" + ps.lam.str() + "|";
  return k;
}

LValueFn LValueCache::wrap(const HalfIntegralSymMat& sigma, int kappa) {
  return [this, sigma, kappa](const SimilitudeSpec& spec) {
    const std::string k = key(sigma, kappa, spec);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = data_.find(k); it != data_.end()) {
        ++hits_;
        return rat_of_json(*it);
      }
    }
    const Rat v = normalized_L(sigma, spec, kappa);
    std::lock_guard<std::mutex> lock(mu_);
    ++misses_;
    store(k, v);
    return v;
  };
}

json normalize_config(const std::string& command, json cfg) {
  if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (!handlers().count(command)) throw std::invalid_argument("unknown command " + command);
  const json defaults = {
      {"n", 2},
      {"kappa", command == "error-bound" ? 17 : 10},
      {"sigma", {{2, 0}, {0, 2}}},
      {"primes", json::array()},
      {"mode", "both"},
      {"margin", 0},
      {"format", "json"},
      {"seed", 1},
      {"max_l0", 4},
      {"density", {{"primes", {3}}, {"truncation", 6}, {"grid", 200}, {"eps", 0.01}}},
      {"error", {{"N", 1}, {"constant", 1.0}}},
  };
  json merged = defaults;
  merged.merge_patch(cfg);
  if (!merged.contains("sigma2")) merged["sigma2"] = merged["sigma"];
  if (!merged["primes"].is_array()) throw std::invalid_argument("primes must be an array");
  for (const auto& e : merged["primes"]) require_keys(e, {"p", "lambda"}, "primes[]");
  const auto mode = merged["mode"].get<std::string>();
  if (mode != "explicit" && mode != "oracle" && mode != "both")
    throw std::invalid_argument("mode must be explicit, oracle or both");
  const auto fmt = merged["format"].get<std::string>();
  if (fmt != "json" && fmt != "csv") throw std::invalid_argument("format must be json or csv");
  if (merged["n"].get<int>() != static_cast<int>(merged["sigma"].size()))
    throw std::invalid_argument("sigma must be n x n");
  require_keys(merged["density"], {"primes", "truncation", "grid", "eps"}, "density");
  require_keys(merged["error"], {"N", "constant"}, "error");
  if (command == "local-integral") {
    if (!merged.contains("local")) throw std::invalid_argument("local-integral requires a 'local' object");
    require_keys(merged["local"], {"p", "tau", "t"}, "local");
    if (!merged["local"].contains("A") && !merged["local"].contains("alpha"))
      throw std::invalid_argument("local requires either A or alpha");
  }
  return merged;
}

CommandOutput run_command(const std::string& command, const json& cfg) {
  return handlers().at(command)(normalize_config(command, cfg));
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, h] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite geometric side, local integrals and Sato-Tate style measures for PGSp(2n)",
               "petersson-lab"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> kappa, margin, truncation, grid, tau, t, alpha, beta, max_l0;
  std::optional<long> p;
  std::optional<double> eps, constant;
  std::optional<std::string> sigma, sigma2, mode, format, cache_dir, A, sigmaU, r, N, density_primes;
  std::vector<std::string> primes;
  bool quadrature = false;

  static const std::map<std::string, std::string> blurb = {
      {"enumerate-a", "integral A with tA sigma1 A = r sigma2"},
      {"arch-factor", "closed-form archimedean factor, optional cubature"},
      {"local-integral", "p-adic local integral: explicit, oracle or both"},
      {"geometric-side", "finite geometric side for a similitude spec"},
      {"normalized-l", "normalised L-value of prod S(c_mu)"},
      {"measure-density", "truncated density against the Sato-Tate measure"},
      {"characters", "Weyl character table for n = 2"},
      {"verify", "quick invariant suite"},
      {"error-bound", "off-diagonal error bound and main term"},
  };
  for (const auto& name : subcommands()) {
    CLI::App* sc = app.add_subcommand(name, blurb.at(name));
    sc->add_option("--config", config_path, "JSON job configuration");
    sc->add_option("--seed", seed, "random seed");
    sc->add_option("--out", out_path, "output file (stdout if absent)");
    sc->add_option("--kappa", kappa);
    sc->add_option("--sigma", sigma, "2 sigma as rows, e.g. 2,0;0,2");
    sc->add_option("--sigma2", sigma2, "2 sigma_2 as rows");
    sc->add_option("--prime", primes, "p:l0,l1,l2 (repeatable)");
    sc->add_option("--r", r, "similitude factor");
    sc->add_option("--cache-dir", cache_dir);
    if (name == "local-integral") {
      sc->add_option("--mode", mode, "explicit, oracle or both");
      sc->add_option("--margin", margin);
      sc->add_option("--p", p);
      sc->add_option("--tau", tau);
      sc->add_option("--t", t);
      sc->add_option("--alpha", alpha);
      sc->add_option("--beta", beta);
      sc->add_option("--A", A, "A as rows; reduced against --sigma");
      sc->add_option("--sigmaU", sigmaU, "2 sigma_U as rows");
    }
    if (name == "arch-factor") {
      sc->add_flag("--quadrature", quadrature, "also integrate numerically (n = 2)");
      sc->add_option("--A", A, "A as rows for the quadrature");
    }
    if (name == "measure-density") {
      sc->add_option("--format", format, "json or csv");
      sc->add_option("--csv", csv_path, "also write samples as CSV here");
      sc->add_option("--density-primes", density_primes, "comma separated primes");
      sc->add_option("--truncation", truncation);
      sc->add_option("--grid", grid);
      sc->add_option("--eps", eps);
    }
    if (name == "characters") sc->add_option("--max-l0", max_l0);
    if (name == "error-bound") {
      sc->add_option("--N", N);
      sc->add_option("--constant", constant);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(Status::Error);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config " + config_path);
      cfg = json::parse(in);
    }
    const auto mat = [](const std::string& s) { return json(parse_rows(s)); };
    if (seed) cfg["seed"] = *seed;
    if (kappa) cfg["kappa"] = *kappa;
    if (sigma) {
      cfg["sigma"] = mat(*sigma);
      cfg["n"] = cfg["sigma"].size();
    }
    if (sigma2) cfg["sigma2"] = mat(*sigma2);
    if (!primes.empty()) {
      cfg["primes"] = json::array();
      for (const auto& s : primes) cfg["primes"].push_back(parse_prime(s));
    }
    if (r) cfg["r"] = *r;
    if (cache_dir) cfg["cache_dir"] = *cache_dir;
    if (mode) cfg["mode"] = *mode;
    if (margin) cfg["margin"] = *margin;
    if (p) cfg["local"]["p"] = *p;
    if (tau) cfg["local"]["tau"] = *tau;
    if (t) cfg["local"]["t"] = *t;
    if (alpha) cfg["local"]["alpha"] = *alpha;
    if (beta) cfg["local"]["beta"] = *beta;
    if (A) {
      if (command == "local-integral")
        cfg["local"]["A"] = mat(*A);
      else
        cfg["A"] = mat(*A);
    }
    if (sigmaU) cfg["local"]["sigmaU"] = mat(*sigmaU);
    if (quadrature) cfg["quadrature"] = true;
    if (format) cfg["format"] = *format;
    if (!csv_path.empty()) cfg["csv"] = csv_path;
    if (density_primes) cfg["density"]["primes"] = parse_rows(*density_primes).at(0);
    if (truncation) cfg["density"]["truncation"] = *truncation;
    if (grid) cfg["density"]["grid"] = *grid;
    if (eps) cfg["density"]["eps"] = *eps;
    if (max_l0) cfg["max_l0"] = *max_l0;
    if (N) cfg["error"]["N"] = *N;
    if (constant) cfg["error"]["constant"] = *constant;

    const CommandOutput res = run_command(command, cfg);
    const bool csv_main = cfg.value("format", std::string("json")) == "csv";
    const std::string text = csv_main ? res.csv : canonical_dump(res.result) + "\n";
    if (!csv_path.empty()) {
      std::ofstream o(csv_path);
      o << res.csv;
    }
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream o(out_path);
      if (!o) throw std::runtime_error("cannot write " + out_path);
      o << text;
    }
    if (command == "verify" && !res.result.at("all_passed").get<bool>()) return static_cast<int>(Status::Error);
    return static_cast<int>(Status::Ok);
  } catch (const UnsupportedRegime& e) {
    err << "unsupported regime: " << e.what() << '\n';
    return static_cast<int>(Status::Unsupported);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(Status::Error);
  }
}

}  // namespace petersson::cli
