#pragma once

// Compositum predictions (value group, ramification index, residue degree,
// p-bound) and their verification against a brute-force oracle that takes
// values of actual products of field elements.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ramify/common.hpp"
#include "ramify/funcfield.hpp"
#include "ramify/hensel.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/resfield.hpp"
#include "ramify/series.hpp"

namespace ramify {

enum class Status { Verified, Refuted, Inconclusive };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Refuted: return "refuted";
    case Status::Inconclusive: return "inconclusive-at-precision";
  }
  return "";
}

/// One checked statement. A refuted claim carries a witness.
struct Claim {
  std::string claim_id;
  std::string anchor;
  std::string predicted;
  std::string observed;
  Status status = Status::Verified;
  std::string witness;
};

inline Claim check(std::string id, std::string anchor, std::string predicted, std::string observed, bool ok,
                   std::string witness = "") {
  Claim c{std::move(id), std::move(anchor), std::move(predicted), std::move(observed),
          ok ? Status::Verified : Status::Refuted, ""};
  if (!ok) c.witness = witness.empty() ? "observed " + c.observed : std::move(witness);
  return c;
}

struct OracleReport {
  std::optional<ValueGroup> observed_value_group;
  std::optional<long> observed_residue_degree;
  long samples_used = 0;
  int degree_bound = 0;
  std::vector<Claim> claims;

  bool all_verified() const {
    for (const auto& c : claims)
      if (c.status != Status::Verified) return false;
    return true;
  }
  void append(const OracleReport& o) {
    claims.insert(claims.end(), o.claims.begin(), o.claims.end());
    samples_used += o.samples_used;
  }
};

namespace anchors {
inline constexpr const char* kLcm = "ramification index of the compositum is the lcm";
inline constexpr const char* kUnramifiedIff = "compositum unramified over F iff vL is a subgroup of vF";
inline constexpr const char* kValueGroupSum = "v(L.F) = vL + vF";
inline constexpr const char* kResidueCompositum = "(L.F)v = Lv.Fv";
inline constexpr const char* kPGroup = "v(L.F)/((vL)_p' + vF) is a p-group";
inline constexpr const char* kPPrimeSum = "vE = (vL)_p' + vF";
inline constexpr const char* kFractional = "subgroup of index e in a torsion free rank-1 hull is (1/e)D";
inline constexpr const char* kIndependent = "(vK(a,b) : vK(a)) = q = (vK(a,b) : vK(b))";
inline constexpr const char* kArtinSchreier = "root of the Artin-Schreier polynomial X^p - X - 1/t";
inline constexpr const char* kImmediateDefect = "immediate Galois extension of degree p with defect p";
inline constexpr const char* kResidueDegreeP = "F_p(a)|F_p separable of degree p";
inline constexpr const char* kKummerResidue = "k contains a primitive n-th root of unity";
inline constexpr const char* kHenselRoot = "b - a is a root of X^p - X - t in the henselization";
inline constexpr const char* kGaussRoot = "unique root z of X^n - x^n/a^n with residue 1";
inline constexpr const char* kOneUnits = "x/a and x^n/a^n are 1-units";
inline constexpr const char* kFundamental = "[E:K] >= (vE:vK)[Ev:Kv]";
}  // namespace anchors

struct CompositumPrediction {
  ValueGroup predicted_value_group;
  std::optional<Integer> predicted_ram_index;
  bool unramified_iff = false;
  ValueGroup p_bound_group;
  std::optional<long> predicted_residue_degree;         // [Lv.Fv : Kv]
  std::optional<long> predicted_residue_degree_over_F;  // [Lv.Fv : Fv]
};

/// Predictions for L.F from the groups of K, L, F. `L_tame` and `L_inertial`
/// are hypotheses supplied by the caller.
inline CompositumPrediction predict(const ValueGroup& vK, const ValueGroup& vL, const ValueGroup& vF, long p,
                                    bool L_tame, bool L_inertial = false, long fL = 1, long fF = 1) {
  if (vK.ambient_rank() != vL.ambient_rank() || vK.ambient_rank() != vF.ambient_rank())
    throw dimension_mismatch("predict: value groups of different ambient rank");
  if (!vL.contains(vK) || !vF.contains(vK)) throw precondition_error("predict: vK must lie in vL and vF");
  GroupIndex eL = index(vL, vK);
  GroupIndex eF = index(vF, vK);
  if (!eL || !eF) throw precondition_error("predict: infinite index over vK");
  CompositumPrediction out{compositum(vL, vF), std::nullopt, vF.contains(vL),
                           compositum(p_prime_part(vL, vK, p), vF), std::nullopt, std::nullopt};
  if (rational_rank(vK) == 1 && L_tame) out.predicted_ram_index = lcm(*eL, *eF);
  if (L_inertial) {
    long f = lcm64(fL, fF);
    out.predicted_residue_degree = f;
    out.predicted_residue_degree_over_F = f / fF;
  }
  return out;
}

/// Value group generated by the values of all monomials prod g_i^{k_i} with
/// sum |k_i| <= degree_bound, computed by multiplying the elements. Each
/// factor and partial product is kept to the relative window `window` above
/// its value, enough to read off the leading term.
template <class E>
std::pair<ValueGroup, long> oracle_value_group(const std::vector<E>& gens, int degree_bound,
                                               const GroupElem& window) {
  using T = lift_traits<E>;
  if (gens.empty()) throw precondition_error("oracle_value_group: no generators");
  const std::size_t rank = window.rank();
  auto value_of = [](const E& x) {
    auto low = T::value_lower_bound(x);
    if (!low) throw precondition_error("oracle_value_group: zero element");
    if (!T::value_determined(x)) throw undetermined_value("oracle_value_group: monomial value undetermined");
    return *low;
  };
  std::vector<E> pos, neg;
  for (const auto& g : gens) {
    GroupElem v = value_of(g);
    pos.push_back(T::truncated(g, v + window));
    neg.push_back(T::inverse(g, window - v));
  }
  std::set<GroupElem> values;
  long samples = 0;
  std::function<void(std::size_t, int, const E&, const GroupElem&)> walk =
      [&](std::size_t j, int left, const E& cur, const GroupElem& v) {
        if (j == gens.size()) {
          values.insert(v);
          ++samples;
          return;
        }
        walk(j + 1, left, cur, v);
        for (const auto* dir : {&pos[j], &neg[j]}) {
          E x = cur;
          for (int k = 1; k <= left; ++k) {
            E y = x * *dir;
            GroupElem w = value_of(y);
            x = T::truncated(y, w + window);
            walk(j + 1, left - k, x, w);
          }
        }
      };
  walk(0, degree_bound, T::constant(gens.front(), 1), GroupElem(rank));
  return {make_lattice(std::vector<GroupElem>(values.begin(), values.end()), rank), samples};
}

/// Kummer compositum over F_p((t)): L = K(t^(1/eL)), F = K(t^(1/eF)*(1+t)).
inline OracleReport verify_theorem2(long eL, long eF, long p, int degree_bound = 8) {
  if (!is_prime(p)) throw precondition_error("verify_theorem2: p must be prime");
  if (eL < 1 || eF < 1) throw precondition_error("verify_theorem2: indices must be positive");
  if (eL % p == 0) throw precondition_error("verify_theorem2: p divides eL, so L is not tame");
  auto field = FqField::make(p, 1);
  auto ring = SeriesRing::make(field, ExponentDomain::puiseux(lcm64(eL, eF)));
  const auto one = field->one();
  SeriesElem t = SeriesElem::monomial(ring, one, 1);
  SeriesElem l = SeriesElem::monomial(ring, one, make_q(1, eL));
  SeriesElem f = SeriesElem::monomial(ring, one, make_q(1, eF)) * (SeriesElem::one(ring) + t);
  const GroupElem window{Rational(1)};

  OracleReport rep;
  rep.degree_bound = degree_bound;
  auto run = [&](std::vector<SeriesElem> g) {
    auto [grp, n] = oracle_value_group(g, degree_bound, window);
    rep.samples_used += n;
    return grp;
  };
  ValueGroup vK = run({t});
  ValueGroup vL = run({t, l});
  ValueGroup vF = run({t, f});
  ValueGroup vLF = run({t, l, f});
  rep.observed_value_group = vLF;

  auto pred = predict(vK, vL, vF, p, true);
  const std::string cell = "(" + std::to_string(eL) + "," + std::to_string(eF) + ")";
  GroupIndex e_obs = index(vLF, vK);
  rep.claims.push_back(check("lcm" + cell, anchors::kLcm, to_string(pred.predicted_ram_index),
                             to_string(e_obs), e_obs == pred.predicted_ram_index));
  bool unram_obs = vLF == vF;
  bool unram_pred = eF % eL == 0;
  rep.claims.push_back(check("unramified" + cell, anchors::kUnramifiedIff, unram_pred ? "true" : "false",
                             unram_obs ? "true" : "false", unram_obs == unram_pred && unram_pred == pred.unramified_iff));
  return rep;
}

/// Every rank-1 subgroup between D and its divisible hull of index e is (1/e)D,
/// checked exhaustively for e <= e_max on a fixed family of D and on random
/// intermediate groups.
inline OracleReport verify_lemma17(long e_max, std::uint64_t seed = 1) {
  if (e_max < 1) throw precondition_error("verify_lemma17: e_max must be at least 1");
  std::mt19937_64 rng(seed);
  const std::vector<Rational> family{make_q(1, 1), make_q(3, 7), make_q(1, 2), make_q(5, 1), make_q(2, 9)};
  OracleReport rep;
  for (const auto& d : family) {
    ValueGroup D = ValueGroup::cyclic(d);
    std::string failure;
    long checks = 0;
    for (long e = 1; e <= e_max && failure.empty(); ++e) {
      ValueGroup full = fractional(D, e);
      ++checks;
      if (index(full, D) != GroupIndex(Integer(e))) failure = "index((1/" + std::to_string(e) + ")D, D) != e";
      // Index-e group from one coset generator k/e with gcd(k, e) = 1.
      long k;
      do k = 1 + static_cast<long>(rng() % (3 * e)); while (std::gcd(k, e) != 1);
      ValueGroup G = make_lattice({GroupElem{d}, GroupElem{Rational(make_q(k, e) * d)}}, 1);
      ++checks;
      if (!(G == full)) failure = "generator " + std::to_string(k) + "/" + std::to_string(e) + " gives " + G.to_string();
      // Random intermediate group: its index m must make it (1/m)D.
      std::vector<GroupElem> gens{GroupElem{d}};
      long count = 1 + static_cast<long>(rng() % 3);
      for (long i = 0; i < count; ++i) {
        long j = static_cast<long>(rng() % (4 * e));
        gens.push_back(GroupElem{Rational(make_q(j, e) * d)});
      }
      ValueGroup H = make_lattice(gens, 1);
      GroupIndex m = index(H, D);
      ++checks;
      if (!m || e % m->get_si() != 0 || !(H == fractional(D, m->get_si())))
        failure = "intermediate group " + H.to_string() + " of index " + to_string(m);
    }
    rep.samples_used += checks;
    std::string id = "fractional(D=" + ValueGroup::cyclic(d).to_string() + ")";
    rep.claims.push_back(check(id, anchors::kFractional, "index-e subgroups equal (1/e)D for e <= " + std::to_string(e_max),
                               failure.empty() ? std::to_string(checks) + " checks passed" : failure, failure.empty(),
                               failure));
  }
  return rep;
}

/// Two F_q-independent classes of (1/q)vK/vK make the compositum index q^2
/// although each generator alone has index q.
inline OracleReport lemma18_witness(long q, const ValueGroup& vK, long p = 0) {
  if (!vK.is_lattice() || rational_rank(vK) < 2) throw precondition_error("lemma18_witness: vK needs rank >= 2");
  if (!is_prime(q)) throw precondition_error("lemma18_witness: q must be prime");
  if (p != 0 && q % p == 0) throw precondition_error("lemma18_witness: q must be prime to the residue characteristic");
  const std::string tag = "(q=" + std::to_string(q) + ")";
  const std::string sq = std::to_string(q);
  GroupElem alpha = make_q(1, q) * vK.basis()[0];
  GroupElem beta = make_q(1, q) * vK.basis()[1];
  auto with = [&](std::vector<GroupElem> extra) {
    std::vector<GroupElem> g = vK.basis();
    g.insert(g.end(), extra.begin(), extra.end());
    return make_lattice(g, vK.ambient_rank());
  };
  ValueGroup Ka = with({alpha});
  ValueGroup Kb = with({beta});
  ValueGroup Kab = with({alpha, beta});
  OracleReport rep;
  rep.observed_value_group = Kab;
  bool indep = fq_independent(alpha, beta, q, vK);
  rep.claims.push_back(check("independent" + tag, anchors::kIndependent, "true", indep ? "true" : "false", indep));
  auto idx = [&](const ValueGroup& G, const ValueGroup& D, const std::string& id) {
    GroupIndex i = index(G, D);
    rep.claims.push_back(check(id + tag, anchors::kIndependent, sq, to_string(i), i == GroupIndex(Integer(q))));
  };
  idx(Ka, vK, "index(vK(a):vK)");
  idx(Kb, vK, "index(vK(b):vK)");
  idx(Kab, Ka, "index(vK(a,b):vK(a))");
  idx(Kab, Kb, "index(vK(a,b):vK(b))");
  GroupIndex total = index(Kab, vK);
  Integer q2 = Integer(q) * q;
  rep.claims.push_back(check("total-index" + tag, anchors::kIndependent, q2.get_str(), to_string(total),
                             total == GroupIndex(q2)));
  rep.claims.push_back(check("lcm-fails-in-rank-2" + tag, anchors::kLcm,
                             "index " + q2.get_str() + " exceeds lcm(q,q) = " + sq, to_string(total),
                             total && *total > q, "total index does not exceed lcm(q,q)"));

  // Element-level oracle over Z^2: y with value (1/q, 0) and t^(1/q).
  if (vK == ValueGroup::standard(2)) {
    long pc = p == 0 ? (q == 2 ? 3 : 2) : p;
    auto field = FqField::make(pc, 1);
    auto ring = SeriesRing::make(field, ExponentDomain::puiseux(q));
    ValRef val = share(GaussValuation::value_transcendental(GroupElem{make_q(1, q), Rational(0)}));
    GaussElem y(val, YPoly::y(ring));
    GaussElem s = GaussElem(val, YPoly::monomial(SeriesElem::one(ring), q));
    GaussElem t = GaussElem::from_series(val, SeriesElem::monomial(ring, field->one(), 1));
    GaussElem b = GaussElem::from_series(val, SeriesElem::monomial(ring, field->one(), make_q(1, q)));
    const GroupElem window{make_q(2, q), Rational(1)};
    auto [obs, n] = oracle_value_group(std::vector<GaussElem>{s, t, y, b}, 2, window);
    auto [obsK, nK] = oracle_value_group(std::vector<GaussElem>{s, t}, 2, window);
    rep.samples_used += n + nK;
    GroupIndex oi = index(obs, obsK);
    rep.claims.push_back(check("oracle-total-index" + tag, anchors::kIndependent, q2.get_str(), to_string(oi),
                               oi == GroupIndex(q2)));
  }
  return rep;
}

/// p-bound check for an observed compositum value group, and the identity
/// vE = (vL)_p' + vF when the caller asserts that E_r = E.
inline OracleReport verify_theorem4(const ValueGroup& vK, const ValueGroup& vL, const ValueGroup& vF, long p,
                                    bool L_normal, const ValueGroup& observed, bool Er_eq_E = false) {
  if (!L_normal) throw precondition_error("verify_theorem4: L|K must be normal");
  if (!index(vL, vK) || !index(vF, vK)) throw precondition_error("verify_theorem4: infinite index");
  ValueGroup lp = p_prime_part(vL, vK, p);
  ValueGroup bound = compositum(lp, vF);
  OracleReport rep;
  rep.observed_value_group = observed;
  const std::string tag = "(vL=" + vL.to_string() + ",vF=" + vF.to_string() + ")";
  rep.claims.push_back(check("p-bound" + tag, anchors::kPGroup, "p-bound contained in v(L.F)", bound.to_string(),
                             observed.contains(bound), "p-bound " + bound.to_string() + " not inside observed"));
  if (observed.contains(bound)) {
    GroupIndex i = index(observed, bound);
    bool pg = is_p_group_quotient(observed, bound, p);
    rep.claims.push_back(check("p-group-quotient" + tag, anchors::kPGroup,
                               "index a power of " + std::to_string(p), to_string(i), pg));
  }
  if (Er_eq_E)
    rep.claims.push_back(check("p-prime-sum" + tag, anchors::kPPrimeSum, bound.to_string(), observed.to_string(),
                               observed == bound));
  return rep;
}

namespace detail {

// Rank-1 or rank-2 value with small denominators prime to p.
inline GroupElem random_value(std::mt19937_64& rng, std::size_t rank, long p, long max_den) {
  GroupElem g(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    long den;
    do den = 1 + static_cast<long>(rng() % max_den); while (den % p == 0);
    long num = static_cast<long>(rng() % (4 * den)) - 2 * den;
    g[i] = make_q(num, den);
  }
  return g;
}

}  // namespace detail

/// Random tame configurations in rank 1 and 2: vL = vK + Z*a and
/// vF = vK + Z*b. The oracle group of K(a-element, b-element) must equal
/// vL + vF.
inline OracleReport verify_theorem3_lattice(std::uint64_t seed, int count = 100, long p = 7, int degree_bound = 8,
                                            long max_den = 12) {
  if (!is_prime(p)) throw precondition_error("verify_theorem3_lattice: p must be prime");
  std::mt19937_64 rng(seed);
  auto field = FqField::make(p, 1);
  const FqElem one = field->one();
  OracleReport rep;
  rep.degree_bound = degree_bound;
  for (int c = 0; c < count; ++c) {
    const std::size_t rank = 1 + rng() % 2;
    GroupElem a = detail::random_value(rng, rank, p, max_den);
    GroupElem b = detail::random_value(rng, rank, p, max_den);
    ValueGroup vK = ValueGroup::standard(rank);
    auto extend = [&](const GroupElem& g) {
      std::vector<GroupElem> gens = vK.basis();
      gens.push_back(g);
      return make_lattice(gens, rank);
    };
    ValueGroup vL = extend(a), vF = extend(b);
    ValueGroup predicted = predict(vK, vL, vF, p, true).predicted_value_group;

    ValueGroup observed = ValueGroup::trivial(rank);
    long n = 0;
    if (rank == 1) {
      long N = lcm64(a[0].get_den().get_si(), b[0].get_den().get_si());
      auto ring = SeriesRing::make(field, ExponentDomain::puiseux(N));
      SeriesElem unit = SeriesElem::one(ring) + SeriesElem::monomial(ring, one, make_q(1, N));
      std::vector<SeriesElem> g{SeriesElem::monomial(ring, one, 1), SeriesElem::monomial(ring, one, a[0]) * unit,
                                SeriesElem::monomial(ring, one, b[0]) * unit};
      std::tie(observed, n) = oracle_value_group(g, degree_bound, GroupElem{make_q(2, N)});
    } else {
      // y carries (1/N, 0); coefficients carry the second coordinate.
      long N = lcm64(a[0].get_den().get_si(), b[0].get_den().get_si());
      long M = lcm64(a[1].get_den().get_si(), b[1].get_den().get_si());
      auto ring = SeriesRing::make(field, ExponentDomain::puiseux(M));
      ValRef val = share(GaussValuation::value_transcendental(GroupElem{make_q(1, N), Rational(0)}));
      YPoly unit = YPoly::constant(SeriesElem::one(ring)) + YPoly::y(ring);
      auto elem = [&](const GroupElem& v) {
        long k = Rational(v[0] * N).get_num().get_si();
        return GaussElem(val, YPoly::monomial(SeriesElem::monomial(ring, one, v[1]), k) * unit);
      };
      std::vector<GaussElem> g{GaussElem(val, YPoly::monomial(SeriesElem::one(ring), N)),
                               GaussElem::from_series(val, SeriesElem::monomial(ring, one, 1)), elem(a), elem(b)};
      std::tie(observed, n) = oracle_value_group(g, degree_bound, GroupElem{make_q(2, N), Rational(0)});
    }
    rep.samples_used += n;
    std::string id = "config-" + std::to_string(c) + "(a=" + a.to_string() + ",b=" + b.to_string() + ")";
    rep.claims.push_back(check(id, anchors::kValueGroupSum, predicted.to_string(), observed.to_string(),
                               observed == predicted));
  }
  return rep;
}

}  // namespace ramify
