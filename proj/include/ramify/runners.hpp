#pragma once

// Runners that build the worked examples and sweeps, check each claim, and
// render reports as text or JSON.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramify/abhyankar.hpp"
#include "ramify/common.hpp"
#include "ramify/extinfo.hpp"
#include "ramify/funcfield.hpp"
#include "ramify/hensel.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/resfield.hpp"
#include "ramify/series.hpp"

namespace ramify {

/// Raised for parameter combinations a runner does not accept (exit code 2).
struct config_error : error {
  using error::error;
};

struct RunConfig {
  std::string runner;
  std::optional<long> prime;
  std::optional<long> n;
  std::optional<long> q;
  std::optional<long> e_max;
  std::optional<long> degree_bound;
  std::optional<Rational> precision;
  std::optional<long> steps;
  std::optional<long> samples;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string mode;     // example16: plain, shifted, composed, transcendental, all
  std::string d;        // example16: series literal for d
  bool degenerate = false;
  bool strict = false;
  bool timing = false;
};

struct Report {
  std::string example;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Claim> claims;
  std::vector<ExtensionDescriptor> descriptors;
  std::vector<std::string> notes;
  long runtime_ms = 0;

  void add(Claim c) { claims.push_back(std::move(c)); }
  void add_all(const OracleReport& r) { claims.insert(claims.end(), r.claims.begin(), r.claims.end()); }
  void echo(std::string key, std::string value) { config.emplace_back(std::move(key), std::move(value)); }
  void echo(std::string key, long value) { config.emplace_back(std::move(key), std::to_string(value)); }

  std::size_t count(Status s) const {
    std::size_t k = 0;
    for (const auto& c : claims) k += c.status == s;
    return k;
  }
};

/// 0: everything verified; 1: something refuted (or inconclusive with strict).
inline int exit_status(const Report& r, bool strict) {
  if (r.count(Status::Refuted) > 0) return 1;
  if (strict && r.count(Status::Inconclusive) > 0) return 1;
  return 0;
}

namespace detail {

inline long need_prime(const RunConfig& cfg, long fallback) {
  long p = cfg.prime.value_or(fallback);
  if (!is_prime(p)) throw config_error("--prime " + std::to_string(p) + " is not prime");
  return p;
}

inline long positive(const std::optional<long>& v, long fallback, const char* name) {
  long x = v.value_or(fallback);
  if (x < 1) throw config_error(std::string("--") + name + " must be positive");
  return x;
}

inline std::string bool_str(bool b) { return b ? "true" : "false"; }

inline Claim fundamental_claim(const ExtensionDescriptor& d) {
  return check("fundamental-inequality[" + d.label + "]", anchors::kFundamental,
               "degree >= e*f", std::to_string(d.degree) + " >= " + std::to_string(d.ram_index * d.res_degree),
               fundamental_inequality_check(d));
}

inline void add_descriptor(Report& r, ExtensionDescriptor d) {
  d = make_descriptor(std::move(d));
  r.add(fundamental_claim(d));
  r.descriptors.push_back(std::move(d));
}

}  // namespace detail

/// Artin-Schreier defect extension over the perfect hull of F_p((t)).
inline Report run_example12(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 2);
  const long N = detail::positive(cfg.n, 6, "n");
  if (N > 64) throw config_error("example12: window 1/p^n needs n <= 64");
  const long samples = detail::positive(cfg.samples, 24, "samples");
  Report rep;
  rep.example = "example12";
  rep.echo("prime", p);
  rep.echo("n", N);
  rep.echo("samples", samples);
  rep.echo("seed", std::to_string(cfg.seed));
  rep.echo("degenerate", detail::bool_str(cfg.degenerate));

  auto Fp = FqField::make(p, 1);
  auto K = SeriesRing::make(Fp, ExponentDomain::perfect_hull(64));
  const Rational window = -Rational(1) / Rational(ipow(Integer(p), N));

  // theta = sum_{i=1..N} t^(-1/p^i), checked against X^p - X - 1/t.
  SeriesElem theta = SeriesElem::zero(K);
  for (long i = 1; i <= N; ++i)
    theta += SeriesElem::monomial(K, Fp->one(), -Rational(1) / Rational(ipow(Integer(p), i)));
  SeriesElem residual = theta.pow(p) - theta - SeriesElem::monomial(K, Fp->one(), -1);
  auto rv = residual.valuation();
  bool ok = !rv || *rv >= window;
  rep.add(check("theta-artin-schreier", anchors::kArtinSchreier, "v(theta^p - theta - 1/t) >= " + window.get_str(),
                rv ? "v = " + rv->get_str() : "exact zero", ok));

  // a: root of X^p - X - 1 generating F_{p^p}.
  fp::Poly as_mod(p + 1, 0);
  as_mod[0] = fp::mod(-1, p);
  as_mod[1] = fp::mod(-1, p);
  as_mod[p] = 1;
  auto Fpp = FqField::with_modulus(p, as_mod);
  FqElem a = cfg.degenerate ? Fpp->one() : Fpp->generator();
  FqElem as_check = a.pow(Integer(p)) - a - Fpp->one();
  int deg = min_poly_degree(a);
  rep.add(check("residue-degree-LF|F", anchors::kResidueDegreeP, std::to_string(p),
                std::to_string(deg) + (as_check.is_zero() ? "" : " (a is not an Artin-Schreier root)"),
                deg == p && as_check.is_zero()));
  int as_deg = artin_schreier_residue_degree(Fp->one());
  rep.add(check("artin-schreier-residue-degree", anchors::kResidueDegreeP, std::to_string(p), std::to_string(as_deg),
                as_deg == p));

  // Sampling: elements sum_{i<p} c_i theta^i of K(theta) and of L.F.
  ValueGroup vK = K->value_group();
  std::mt19937_64 rng(cfg.seed);
  auto LF = SeriesRing::make(Fpp, ExponentDomain::perfect_hull(64));
  auto pick = [&](const RingRef& ring, const FqElem& unit) {
    long kind = static_cast<long>(rng() % 4);
    if (kind == 0) return SeriesElem::zero(ring);
    long j = static_cast<long>(rng() % 7) - 3;
    long k = static_cast<long>(rng() % 3);
    Rational e = make_q(j, 1) / Rational(ipow(Integer(p), k));
    SeriesElem m = SeriesElem::monomial(ring, unit, e);
    if (kind == 3) m = m * (SeriesElem::one(ring) + SeriesElem::monomial(ring, ring->field()->one(), make_q(1, p)));
    return m;
  };
  auto sample = [&](const RingRef& ring, const SeriesElem& th, bool use_a, long& in_group, long& in_prime_res) {
    long used = 0;
    for (long s = 0; s < samples; ++s) {
      SeriesElem x = SeriesElem::zero(ring);
      SeriesElem power = SeriesElem::one(ring);
      for (long i = 0; i < p; ++i) {
        FqElem unit = use_a && rng() % 2 ? a.pow(Integer(1 + static_cast<long>(rng() % p))) : ring->field()->one();
        x += pick(ring, unit) * power;
        power *= th;
      }
      if (x.is_exact_zero()) continue;
      ++used;
      in_group += vK.contains(x.value());
      in_prime_res += x.leading_coefficient().in_prime_field();
    }
    return used;
  };
  long g1 = 0, r1 = 0;
  long used1 = sample(K, theta, false, g1, r1);
  rep.add(check("L|K-immediate-sampled", anchors::kImmediateDefect,
                "values in " + vK.to_string() + ", residues in F_" + std::to_string(p),
                std::to_string(g1) + "/" + std::to_string(used1) + " values, " + std::to_string(r1) + "/" +
                    std::to_string(used1) + " residues (verified at sampling scale)",
                g1 == used1 && r1 == used1));
  SeriesElem theta_lf = SeriesElem::zero(LF);
  for (const auto& [e, c] : theta.terms()) theta_lf += SeriesElem::monomial(LF, Fpp->one(), e);
  long g2 = 0, r2 = 0;
  long used2 = sample(LF, theta_lf, true, g2, r2);
  rep.add(check("LF|F-value-group-unchanged", anchors::kImmediateDefect, "values in vF = " + vK.to_string(),
                std::to_string(g2) + "/" + std::to_string(used2) + " values (verified at sampling scale)",
                g2 == used2));

  const long f_lf = deg;
  ExtensionDescriptor LK{"L|K", p, 1, 1, p, true, vK, vK, true, false};
  detail::add_descriptor(rep, LK);
  rep.add(check("defect(L|K)", anchors::kImmediateDefect, std::to_string(p), LK.defect().get_str(),
                LK.defect() == p && is_immediate(LK) && !is_defectless(LK) && !is_tame(LK)));
  rep.add(check("not-pretame(L|K)", anchors::kImmediateDefect, "false", detail::bool_str(pretame_check(LK)),
                !pretame_check(LK)));
  detail::add_descriptor(rep, {"F|K", p, 1, 1, p, true, vK, vK, true, false});
  if (f_lf == p) {
    ExtensionDescriptor LFF{"L.F|F", p, 1, p, p, true, vK, vK, true, true};
    detail::add_descriptor(rep, LFF);
    rep.add(check("unramified(L.F|F)", anchors::kImmediateDefect, "true",
                  detail::bool_str(is_unramified(LFF) && is_defectless(LFF)), is_unramified(LFF) && is_defectless(LFF)));
  }
  return rep;
}

/// Kummer example over k(t, x) with x = w^n, w transcendental of value 0.
inline Report run_example14(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 7);
  const long n = detail::positive(cfg.n, 2, "n");
  if (std::gcd(n, p) != 1) throw config_error("example14 requires gcd(n, p) = 1");
  Report rep;
  rep.example = "example14";
  rep.echo("prime", p);
  rep.echo("n", n);
  long k = 1;
  while ((ipow(Integer(p), k) - 1) % n != 0) {
    if (++k > 12) throw config_error("example14: no F_{p^k} with k <= 12 contains n-th roots of unity");
  }
  rep.echo("k", k);
  auto field = FqField::make(p, static_cast<int>(k));
  auto zeta = primitive_root_of_unity(field, n);
  rep.add(check("primitive-root-of-unity", anchors::kKummerResidue, "order " + std::to_string(n),
                zeta ? "order " + multiplicative_order(*zeta).get_str() : "none",
                zeta && multiplicative_order(*zeta) == n));

  auto ring = SeriesRing::make(field, ExponentDomain::puiseux(n));
  ValRef val = share(GaussValuation::plain());
  const FqElem one = field->one();
  auto coeff = [&](const Rational& e) { return GaussElem::from_series(val, SeriesElem::monomial(ring, one, e)); };
  GaussElem t = coeff(1);
  GaussElem x(val, YPoly::monomial(SeriesElem::one(ring), n));  // x = w^n
  GaussElem w(val, YPoly::y(ring));
  GaussElem tl = coeff(make_q(1, n));  // t^(1/n)
  GaussElem tf = tl * w;               // t^(1/n) x^(1/n)
  const GroupElem window{Rational(1)};
  const int bound = static_cast<int>(cfg.degree_bound.value_or(4));
  auto oracle = [&](std::vector<GaussElem> g) { return oracle_value_group(g, bound, window).first; };
  ValueGroup vK = oracle({t, x});
  ValueGroup vL = oracle({t, x, tl});
  ValueGroup vF = oracle({t, x, tf});
  ValueGroup vE = oracle({t, x, tl, tf});
  GroupIndex eL = index(vL, vK);
  GroupIndex eE = index(vE, vF);
  rep.add(check("e(L|K)", anchors::kKummerResidue, std::to_string(n), to_string(eL), eL == GroupIndex(Integer(n))));
  rep.add(check("e(L.F|F)", anchors::kKummerResidue, "1", to_string(eE), eE == GroupIndex(Integer(1))));

  // Residues of units are monomials in the symbol of w; the residue degree is
  // the index of the exponent lattices of Fv and (L.F)v over k(xv).
  auto residue_exponent = [&](const GaussElem& unit) {
    auto r = residue_of_unit(RatFunc(unit.poly()), *val);
    long e = -1;
    for (std::size_t i = 0; i < r.num.size(); ++i)
      if (!r.num[i].is_zero()) {
        if (e != -1) throw error("internal: residue is not a monomial");
        e = static_cast<long>(i);
      }
    if (r.den.size() != 1) throw error("internal: residue has a denominator");
    return GroupElem{Rational(e)};
  };
  GaussElem tinv = t.inverse(GroupElem{Rational(8)});
  GaussElem f_unit = tf.pow(n) * tinv;  // (t^(1/n) w)^n / t = x
  GaussElem e_unit = tf * tl.inverse(GroupElem{Rational(8)});  // w
  ValueGroup resF = make_lattice({residue_exponent(x), residue_exponent(f_unit)}, 1);
  ValueGroup resE = make_lattice({residue_exponent(x), residue_exponent(f_unit), residue_exponent(e_unit)}, 1);
  GroupIndex fE = index(resE, resF);
  rep.add(check("f(L.F|F)", anchors::kKummerResidue, std::to_string(n), to_string(fE), fE == GroupIndex(Integer(n))));

  const ValueGroup Z = ValueGroup::standard(1);
  const ValueGroup Zn = fractional(Z, n);
  detail::add_descriptor(rep, {"L|K", n, n, 1, p, true, Z, Zn, true, true});
  detail::add_descriptor(rep, {"F|K", n, n, 1, p, true, Z, Zn, true, true});
  ExtensionDescriptor EF{"L.F|F", n, 1, n, p, true, Zn, Zn, true, true};
  detail::add_descriptor(rep, EF);
  rep.add(check("flags(L.F|F)", anchors::kKummerResidue, "unramified, tame, not immediate (for n > 1)",
                "unramified=" + detail::bool_str(is_unramified(EF)) + " tame=" + detail::bool_str(is_tame(EF)) +
                    " immediate=" + detail::bool_str(is_immediate(EF)),
                is_unramified(EF) && is_tame(EF) && is_immediate(EF) == (n == 1)));
  return rep;
}

/// Newton lift of the root of X^p - X - t with residue 0.
inline Report run_example15(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 2);
  const long steps = detail::positive(cfg.steps, 5, "steps");
  if (steps > 20) throw config_error("example15: --steps at most 20");
  Rational target(ipow(Integer(2), steps));
  if (cfg.precision && *cfg.precision > target) target = *cfg.precision;
  Report rep;
  rep.example = "example15";
  rep.echo("prime", p);
  rep.echo("steps", steps);
  rep.echo("precision", target.get_str());
  rep.echo("degenerate", detail::bool_str(cfg.degenerate));

  auto field = FqField::make(p, 1);
  auto ring = SeriesRing::make(field, ExponentDomain::puiseux(1));
  SeriesElem c = cfg.degenerate ? SeriesElem::zero(ring) : SeriesElem::monomial(ring, field->one(), 1);
  std::vector<SeriesElem> poly(p + 1, SeriesElem::zero(ring));
  poly[0] = -c;
  poly[1] = SeriesElem::constant(ring, -1);
  poly[p] = poly[p] + SeriesElem::one(ring);
  auto prob = make_lift_problem(poly, field->zero(), target);
  auto trace = newton_trace(prob, static_cast<int>(steps));
  std::string ts;
  for (const auto& s : trace) ts += (ts.empty() ? "" : ", ") + s.to_string();
  Convergence conv = check_quadratic(trace, prob.target_precision);
  rep.add({"newton-doubling", anchors::kHenselRoot, "v(f(z_k+1)) >= 2 v(f(z_k))", ts,
           conv == Convergence::Quadratic ? Status::Verified
           : conv == Convergence::Violated ? Status::Refuted
                                           : Status::Inconclusive,
           conv == Convergence::Violated ? "trace " + ts : ""});
  SeriesElem z = hensel_lift(prob);
  SeriesElem res = z.pow(p) - z - c;
  auto low = res.value_lower_bound();
  rep.add(check("residual", anchors::kHenselRoot, "v(z^p - z - t) >= " + target.get_str(),
                low ? ">= " + low->get_str() : "exact zero", !low || *low >= target));
  // Closed form: z = -(t + t^p + t^(p^2) + ...).
  SeriesElem closed = SeriesElem::zero(ring);
  if (!cfg.degenerate)
    for (Integer e = 1; e < target; e *= p) closed -= SeriesElem::monomial(ring, field->one(), Rational(e));
  rep.add(check("root-closed-form", anchors::kHenselRoot, cfg.degenerate ? "0" : "-(t + t^p + t^(p^2) + ...)",
                z.to_string(), z.agrees_with(closed, target)));
  rep.add(check("root-residue", anchors::kHenselRoot, "0", z.residue().to_string(), z.residue().is_zero()));

  ExtensionDescriptor EF{"L.F|F", cfg.degenerate ? 1 : p, 1, 1, p, true, ValueGroup::standard(1),
                         ValueGroup::standard(1), false, true};
  detail::add_descriptor(rep, EF);
  rep.add(check("immediate(L.F|F)", anchors::kHenselRoot, "e = 1, f = 1, root in the henselization",
                "immediate=" + detail::bool_str(is_immediate(EF)) + " pretame=" + detail::bool_str(pretame_check(EF)),
                is_immediate(EF) && pretame_check(EF)));
  return rep;
}

/// a = t^(1/n) lies in the henselization of K(x) for x = a + d*y.
inline Report run_example16(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 5);
  const long n = detail::positive(cfg.n, 2, "n");
  if (n % p == 0) throw config_error("example16 requires p not dividing n");
  Rational R = cfg.precision.value_or(Rational(32));
  if (R <= 0) throw config_error("example16: precision must be positive");
  std::string mode = cfg.mode.empty() ? "plain,shifted" : cfg.mode;
  if (mode == "all") mode = "plain,shifted,composed,transcendental";
  std::string dtext = cfg.d.empty() ? (n == 1 ? "t^2" : "t") : cfg.d;

  Report rep;
  rep.example = "example16";
  rep.echo("prime", p);
  rep.echo("n", n);
  rep.echo("d", dtext);
  rep.echo("precision", R.get_str());
  rep.echo("modes", mode);

  auto field = FqField::make(p, 1);
  long bound = n;
  {
    auto probe = SeriesRing::make(field, ExponentDomain::puiseux(720720));
    SeriesElem d0 = parse_series(probe, dtext);
    for (const auto& [e, c] : d0.terms()) bound = lcm64(bound, e.get_den().get_si());
  }
  auto ring = SeriesRing::make(field, ExponentDomain::puiseux(bound));
  SeriesElem d = parse_series(ring, dtext);
  if (!d.is_exact() || d.terms().empty()) throw config_error("example16: d must be a nonzero exact series");
  const Rational va = make_q(1, n);
  const Rational vd = *d.valuation();
  if (vd <= va) throw config_error("example16 requires v(d) > v(a) = " + va.get_str());
  SeriesElem a = SeriesElem::monomial(ring, field->one(), va);
  SeriesElem a_inv = SeriesElem::monomial(ring, field->one(), -va);

  GroupIndex ord = order_mod(GroupElem{va}, ValueGroup::standard(1));
  rep.add(check("order(va mod vK)", anchors::kGaussRoot, std::to_string(n), to_string(ord),
                ord == GroupIndex(Integer(n))));

  std::vector<std::string> modes;
  {
    std::stringstream ss(mode);
    std::string m;
    while (std::getline(ss, m, ',')) modes.push_back(m);
  }
  for (const auto& m : modes) {
    ValRef val;
    YPoly x(ring);
    if (m == "plain") {
      val = share(GaussValuation::plain());
      x = YPoly::constant(a) + YPoly::monomial(d, 1);
    } else if (m == "shifted") {
      val = share(GaussValuation::shifted(vd));
      x = YPoly::constant(a) + YPoly::y(ring);
    } else if (m == "composed") {
      val = share(GaussValuation::composed_y_adic());
      x = YPoly::constant(a) + YPoly::y(ring);
    } else if (m == "transcendental") {
      val = share(GaussValuation::value_transcendental(GroupElem{Rational(1), vd}));
      x = YPoly::constant(a) + YPoly::y(ring);
    } else {
      throw config_error("example16: unknown mode '" + m + "'");
    }
    const GroupElem T = val->is_rank_one() ? GroupElem{R} : GroupElem{R, Rational(0)};
    const std::string tag = "[" + m + "]";
    GaussElem X(val, x);
    GaussElem A = GaussElem::from_series(val, a);
    GaussElem Ainv = GaussElem::from_series(val, a_inv);
    GaussElem u = GaussElem(val, (x * YPoly::constant(a_inv)).pow(n));
    GaussElem one = GaussElem::constant(val, ring, 1);

    auto hv = (u - one).value_lower_bound();
    auto res_xa = residue_of_unit(RatFunc(x, YPoly::constant(a)), *val);
    auto res_u = residue_of_unit(RatFunc(u.poly()), *val);
    bool one_units = hv && *hv > val->zero() && res_xa.is_constant() && res_xa.constant_value().is_one() &&
                     res_u.is_constant() && res_u.constant_value().is_one();
    rep.add(check("one-units" + tag, anchors::kOneUnits, "v(u - 1) > 0, residue(x/a) = residue(u) = 1",
                  "v(u - 1) = " + (hv ? hv->to_string() : "inf") + ", residue(x/a) = " + res_xa.to_string(),
                  one_units));

    std::vector<GaussElem> poly(n + 1, GaussElem::constant(val, ring, 0));
    poly[0] = -u;
    poly[n] = one;
    LiftProblem<GaussElem> prob{poly, one, T};
    auto lifted = hensel_lift_traced(prob);
    const GaussElem& z = lifted.root;
    Convergence conv = check_quadratic(lifted.trace, T);
    std::string ts;
    for (const auto& s : lifted.trace) ts += (ts.empty() ? "" : ", ") + s.to_string();
    rep.add({"newton-doubling" + tag, anchors::kGaussRoot, "v(f(z_k+1)) >= 2 v(f(z_k))", ts,
             conv == Convergence::Quadratic ? Status::Verified
             : conv == Convergence::Violated ? Status::Refuted
                                             : Status::Inconclusive,
             ""});
    rep.add(check("z*a = x" + tag, anchors::kGaussRoot, "agreement to " + T.to_string(),
                  (z * A).agrees_with(X, T) ? "agrees" : "differs", (z * A).agrees_with(X, T)));
    GaussElem zn = z.pow(n);
    rep.add(check("z^n = x^n/a^n" + tag, anchors::kGaussRoot, "agreement to " + T.to_string(),
                  zn.agrees_with(u, T) ? "agrees" : "differs", zn.agrees_with(u, T)));
    GaussElem back = X * z.inverse(T);
    const GroupElem Ta = T + val->embed(va);
    rep.add(check("a = x/z" + tag, anchors::kGaussRoot, "agreement to " + Ta.to_string(),
                  back.agrees_with(A, Ta) ? "agrees" : "differs", back.agrees_with(A, Ta)));
    auto zr = residue_of_unit(RatFunc(z.truncated(val->is_rank_one() ? GroupElem{make_q(1, 1000)} : GroupElem{make_q(1, 1000), Rational(0)}).poly()), *val);
    rep.add(check("residue(z)" + tag, anchors::kGaussRoot, "1", zr.to_string(), zr.is_constant() && zr.constant_value().is_one()));
  }
  const ValueGroup Z = ValueGroup::standard(1);
  detail::add_descriptor(rep, {"L|K", n, n, 1, p, true, Z, fractional(Z, n), true, true});
  return rep;
}

inline Report run_lcm_table(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 7);
  const long bound = detail::positive(cfg.n, 12, "n");
  const int deg = static_cast<int>(detail::positive(cfg.degree_bound, 8, "degree-bound"));
  Report rep;
  rep.example = "lcm-table";
  rep.echo("prime", p);
  rep.echo("n", bound);
  rep.echo("degree_bound", deg);
  long skipped = 0;
  for (long eL = 1; eL <= bound; ++eL)
    for (long eF = 1; eF <= bound; ++eF) {
      if (eL % p == 0) {
        ++skipped;
        continue;
      }
      rep.add_all(verify_theorem2(eL, eF, p, deg));
    }
  if (skipped) rep.notes.push_back(std::to_string(skipped) + " cells with p | eL skipped (L not tame)");
  return rep;
}

inline Report run_lemma17(const RunConfig& cfg) {
  const long e_max = detail::positive(cfg.e_max, 50, "e-max");
  Report rep;
  rep.example = "lemma17";
  rep.echo("e_max", e_max);
  rep.echo("seed", std::to_string(cfg.seed));
  rep.add_all(verify_lemma17(e_max, cfg.seed));
  return rep;
}

inline Report run_lemma18(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 7);
  std::vector<long> qs = cfg.q ? std::vector<long>{*cfg.q} : std::vector<long>{2, 3, 5};
  Report rep;
  rep.example = "lemma18";
  rep.echo("prime", p);
  rep.echo("q", cfg.q ? std::to_string(*cfg.q) : std::string("2,3,5"));
  for (long q : qs) {
    if (!is_prime(q) || q == p) throw config_error("lemma18: q must be a prime different from p");
    rep.add_all(lemma18_witness(q, ValueGroup::standard(2), p));
  }
  if (!cfg.q) rep.add_all(lemma18_witness(2, ValueGroup::standard(3), p));
  return rep;
}

/// p-bound instances: the fixed p = 2 instance and Kummer instances
/// whose compositum value group comes from the oracle.
inline OracleReport p_bound_instances(long p) {
  const ValueGroup Z = ValueGroup::standard(1);
  auto cyc = [](long num, long den) { return ValueGroup::cyclic(make_q(num, den)); };
  OracleReport rep;
  if (p == 2) rep.append(verify_theorem4(Z, cyc(1, 6), Z, 2, true, cyc(1, 12)));
  struct Inst {
    long eL, eF;
  };
  for (Inst in : {Inst{6, 1}, Inst{6, 2}, Inst{3, 2}, Inst{5, 1}, Inst{4, 3}, Inst{10, 4}}) {
    long N = lcm64(in.eL, in.eF);
    auto field = FqField::make(p, 1);
    auto ring = SeriesRing::make(field, ExponentDomain::puiseux(N));
    const FqElem one = field->one();
    std::vector<SeriesElem> g{SeriesElem::monomial(ring, one, 1), SeriesElem::monomial(ring, one, make_q(1, in.eL)),
                              SeriesElem::monomial(ring, one, make_q(1, in.eF))};
    auto [obs, k] = oracle_value_group(g, 4, GroupElem{Rational(1)});
    // No wild ramification remains in L.F|F exactly when p does not divide
    // e(L.F|F); then the compositum group is (vL)_p' + vF.
    GroupIndex eE = index(obs, cyc(1, in.eF));
    bool er_eq_e = *eE % p != 0;
    auto r = verify_theorem4(Z, cyc(1, in.eL), cyc(1, in.eF), p, true, obs, er_eq_e);
    r.samples_used += k;
    rep.append(r);
  }
  return rep;
}

inline Report run_sweeps(const RunConfig& cfg) {
  const long p = detail::need_prime(cfg, 7);
  const long bound = detail::positive(cfg.n, 12, "n");
  const long e_max = detail::positive(cfg.e_max, 50, "e-max");
  const int deg = static_cast<int>(detail::positive(cfg.degree_bound, 8, "degree-bound"));
  Report rep;
  rep.example = "sweeps";
  rep.echo("prime", p);
  rep.echo("n", bound);
  rep.echo("e_max", e_max);
  rep.echo("degree_bound", deg);
  rep.echo("seed", std::to_string(cfg.seed));
  RunConfig sub = cfg;
  Report table = run_lcm_table(sub);
  rep.claims = table.claims;
  rep.notes = table.notes;
  rep.add_all(verify_lemma17(e_max, cfg.seed));
  for (long q : {2L, 3L, 5L})
    if (q != p) rep.add_all(lemma18_witness(q, ValueGroup::standard(2), p));
  rep.add_all(p_bound_instances(p));
  rep.add_all(p_bound_instances(2));
  rep.add_all(verify_theorem3_lattice(cfg.seed, 100, p, deg));
  return rep;
}

inline Report run(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report r;
  if (cfg.runner == "example12") r = run_example12(cfg);
  else if (cfg.runner == "example14") r = run_example14(cfg);
  else if (cfg.runner == "example15") r = run_example15(cfg);
  else if (cfg.runner == "example16") r = run_example16(cfg);
  else if (cfg.runner == "sweeps") r = run_sweeps(cfg);
  else if (cfg.runner == "lemma17") r = run_lemma17(cfg);
  else if (cfg.runner == "lemma18") r = run_lemma18(cfg);
  else if (cfg.runner == "lcm-table") r = run_lcm_table(cfg);
  else throw config_error("unknown runner '" + cfg.runner + "'");
  if (cfg.timing)
    r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline nlohmann::ordered_json descriptor_json(const ExtensionDescriptor& d) {
  nlohmann::ordered_json j;
  j["label"] = d.label;
  j["degree"] = d.degree;
  j["e"] = d.ram_index;
  j["f"] = d.res_degree;
  j["defect"] = d.defect().get_str();
  j["res_char"] = d.res_char;
  nlohmann::ordered_json flags;
  flags["defectless"] = is_defectless(d);
  flags["tame"] = is_tame(d);
  flags["unramified"] = is_unramified(d);
  flags["immediate"] = is_immediate(d);
  if (d.value_group_base) flags["pretame"] = pretame_check(d);
  flags["henselian_normal"] = d.henselian_normal;
  j["flags"] = flags;
  return j;
}

inline std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["example"] = r.example;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = config;
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const auto& c : r.claims) {
    nlohmann::ordered_json cj;
    cj["claim_id"] = c.claim_id;
    cj["paper_anchor"] = c.anchor;
    cj["predicted"] = c.predicted;
    cj["observed"] = c.observed;
    cj["status"] = to_string(c.status);
    if (!c.witness.empty()) cj["witness"] = c.witness;
    claims.push_back(cj);
  }
  j["claims"] = claims;
  nlohmann::ordered_json ds = nlohmann::ordered_json::array();
  for (const auto& d : r.descriptors) ds.push_back(descriptor_json(d));
  j["descriptors"] = ds;
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["runtime_ms"] = r.runtime_ms;
  return j.dump(2) + "\n";
}

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.example;
  for (const auto& [k, v] : r.config) os << "  " << k << "=" << v;
  os << "\n";
  for (const auto& c : r.claims) {
    os << "[" << to_string(c.status) << "] " << c.claim_id << ": predicted " << c.predicted << "; observed "
       << c.observed << "\n";
    if (!c.witness.empty()) os << "    witness: " << c.witness << "\n";
  }
  for (const auto& d : r.descriptors) {
    os << "descriptor " << d.label << ": degree=" << d.degree << " e=" << d.ram_index << " f=" << d.res_degree
       << " defect=" << d.defect().get_str() << " res_char=" << d.res_char
       << " defectless=" << is_defectless(d) << " tame=" << is_tame(d) << " unramified=" << is_unramified(d)
       << " immediate=" << is_immediate(d) << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << "summary: " << r.count(Status::Verified) << " verified, " << r.count(Status::Refuted) << " refuted, "
     << r.count(Status::Inconclusive) << " inconclusive";
  if (r.runtime_ms) os << ", " << r.runtime_ms << " ms";
  os << "\n";
  return os.str();
}

}  // namespace ramify
