#pragma once

// Randomized property checks with hand-rolled generators. Each returns the
// number of cases run and the first counterexample, if any.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ramify/funcfield.hpp"
#include "ramify/hensel.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/series.hpp"

namespace props {

using namespace ramify;

constexpr std::uint64_t kSeed = 20240611;
constexpr int kCases = 1000;

struct Outcome {
  std::string name;
  int cases = 0;
  std::string failure;
  bool ok() const { return failure.empty(); }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long range(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long max_den, long span) {
    long d = range(1, max_den);
    return make_q(range(-span * d, span * d), d);
  }
  GroupElem elem(std::size_t rank, long max_den, long span) {
    GroupElem g(rank);
    for (std::size_t i = 0; i < rank; ++i) g[i] = rational(max_den, span);
    return g;
  }
  std::vector<GroupElem> elems(std::size_t count, std::size_t rank, long max_den, long span) {
    std::vector<GroupElem> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(elem(rank, max_den, span));
    return out;
  }
  /// Full-rank lattice: Z^rank plus random generators.
  ValueGroup full_lattice(std::size_t rank, long max_den) {
    std::vector<GroupElem> gens = elems(static_cast<std::size_t>(range(0, 2)), rank, max_den, 2);
    for (std::size_t i = 0; i < rank; ++i) gens.push_back(GroupElem::unit(rank, i));
    return make_lattice(gens, rank);
  }
  /// Series with `terms` random terms at exponents k/den in [lo, lo + 4).
  SeriesElem series(const RingRef& ring, long den, long lo, int terms) {
    const long p = ring->characteristic();
    SeriesElem x = SeriesElem::zero(ring);
    for (int i = 0; i < terms; ++i) {
      long c = range(1, p - 1);
      x += SeriesElem::monomial(ring, ring->field()->from_int(c), make_q(lo * den + range(0, 4 * den - 1), den));
    }
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

inline Outcome valuation_axioms(std::uint64_t seed = kSeed, int cases = kCases) {
  Outcome o{"valuation axioms", 0, {}};
  Gen g(seed);
  const long primes[] = {2, 3, 5, 7};
  for (int i = 0; i < cases && o.ok(); ++i, ++o.cases) {
    long p = primes[g.range(0, 3)];
    auto ring = SeriesRing::make(FqField::make(p, 1), ExponentDomain::puiseux(6));
    SeriesElem x = g.series(ring, 6, g.range(-2, 2), static_cast<int>(g.range(1, 4)));
    SeriesElem y = g.series(ring, 6, g.range(-2, 2), static_cast<int>(g.range(1, 4)));
    if (x.is_exact_zero() || y.is_exact_zero()) continue;
    Rational vx = *x.valuation(), vy = *y.valuation();
    if (*(x * y).valuation() != vx + vy) o.failure = "v(xy) for " + x.to_string() + ", " + y.to_string();
    SeriesElem s = x + y;
    if (!s.is_exact_zero()) {
      Rational vs = *s.valuation();
      if (vs < std::min<Rational>(vx, vy)) o.failure = "v(x+y) < min for " + x.to_string() + ", " + y.to_string();
      if (vx != vy && vs != std::min<Rational>(vx, vy)) o.failure = "strict triangle for " + x.to_string();
    }
    // Gauss value is multiplicative on polynomials.
    ValRef val = share(i % 2 ? GaussValuation::plain() : GaussValuation::shifted(g.rational(3, 1)));
    YPoly f = YPoly::constant(x) + YPoly::monomial(y, 1);
    YPoly h = YPoly::monomial(y, 0) + YPoly::monomial(x, 2);
    if (!(gauss_value(f * h, *val) == gauss_value(f, *val) + gauss_value(h, *val)))
      o.failure = "gauss value not multiplicative under " + val->name() + " for " + f.to_string();
  }
  return o;
}

inline Outcome residue_homomorphism(std::uint64_t seed = kSeed, int cases = kCases) {
  Outcome o{"residue homomorphism", 0, {}};
  Gen g(seed + 1);
  for (int i = 0; i < cases && o.ok(); ++i, ++o.cases) {
    long p = i % 2 ? 3 : 5;
    auto F = FqField::make(p, 2);
    auto ring = SeriesRing::make(F, ExponentDomain::puiseux(4));
    auto coef = [&] { return F->from_coords({g.range(0, p - 1), g.range(0, p - 1)}); };
    SeriesElem x = SeriesElem::constant(ring, coef()) + g.series(ring, 4, 0, 3).shifted(make_q(1, 4));
    SeriesElem y = SeriesElem::constant(ring, coef()) + g.series(ring, 4, 0, 3).shifted(make_q(1, 4));
    if (!((x * y).residue() == x.residue() * y.residue())) o.failure = "residue(xy) for " + x.to_string();
    if (!((x + y).residue() == x.residue() + y.residue())) o.failure = "residue(x+y) for " + x.to_string();
    // Units of the Gauss valuation: residue of a product of units.
    ValRef val = share(GaussValuation::plain());
    FqElem a = coef(), b = coef();
    if (a.is_zero() || b.is_zero()) continue;
    YPoly u = YPoly::constant(SeriesElem::constant(ring, a)) + YPoly::monomial(g.series(ring, 4, 1, 2), 1);
    YPoly w = YPoly::constant(SeriesElem::constant(ring, b)) + YPoly::monomial(g.series(ring, 4, 1, 2), 2);
    auto ru = residue_of_unit(RatFunc(u), *val);
    auto rw = residue_of_unit(RatFunc(w), *val);
    auto ruw = residue_of_unit(RatFunc(u * w), *val);
    if (!ruw.is_constant() || !(ruw.constant_value() == ru.constant_value() * rw.constant_value()))
      o.failure = "gauss residue of product for " + u.to_string();
  }
  return o;
}

inline Outcome canonical_form_idempotence(std::uint64_t seed = kSeed, int cases = kCases) {
  Outcome o{"canonical-form idempotence", 0, {}};
  Gen g(seed + 2);
  for (int i = 0; i < cases && o.ok(); ++i, ++o.cases) {
    std::size_t rank = static_cast<std::size_t>(g.range(1, 3));
    auto gens = g.elems(static_cast<std::size_t>(g.range(0, 4)), rank, 30, 3);
    ValueGroup G = make_lattice(gens, rank);
    if (!(make_lattice(G.basis(), rank) == G)) o.failure = "basis of " + G.to_string();
    // Elementary moves on the generators do not change the group.
    if (gens.size() >= 2) {
      auto moved = gens;
      long k = g.range(-3, 3);
      moved[0] = moved[0] + Rational(k) * moved[1];
      std::swap(moved[0], moved.back());
      moved.back() = -moved.back();
      if (!(make_lattice(moved, rank) == G)) o.failure = "unimodular move changes " + G.to_string();
    }
    for (const auto& x : gens)
      if (!G.contains(x)) o.failure = "generator " + x.to_string() + " not in " + G.to_string();
    // Compositum laws.
    ValueGroup H = make_lattice(g.elems(2, rank, 30, 3), rank);
    ValueGroup J = make_lattice(g.elems(1, rank, 30, 3), rank);
    if (!(compositum(G, H) == compositum(H, G))) o.failure = "compositum not commutative";
    if (!(compositum(compositum(G, H), J) == compositum(G, compositum(H, J)))) o.failure = "compositum not associative";
    if (!(compositum(G, G) == G)) o.failure = "compositum not idempotent";
    if (!compositum(G, H).contains(G)) o.failure = "compositum not monotone";
  }
  return o;
}

inline Outcome index_multiplicativity(std::uint64_t seed = kSeed, int cases = kCases) {
  Outcome o{"index multiplicativity", 0, {}};
  Gen g(seed + 3);
  for (int i = 0; i < cases && o.ok(); ++i, ++o.cases) {
    std::size_t rank = static_cast<std::size_t>(g.range(1, 3));
    ValueGroup D = ValueGroup::standard(rank);
    ValueGroup M = compositum(D, g.full_lattice(rank, 12));
    ValueGroup G = compositum(M, g.full_lattice(rank, 12));
    GroupIndex gd = index(G, D), gm = index(G, M), md = index(M, D);
    if (!gd || !gm || !md || *gd != *gm * *md)
      o.failure = "index(" + G.to_string() + ", " + D.to_string() + ") via " + M.to_string();
    GroupElem x = g.elem(rank, 12, 2);
    if (G.contains(x)) {
      GroupIndex ord = order_mod(x, D);
      if (!ord || *gd % *ord != 0) o.failure = "order_mod does not divide the index for " + x.to_string();
    }
  }
  return o;
}

inline Outcome newton_quadratic(std::uint64_t seed = kSeed, int cases = kCases) {
  Outcome o{"quadratic Newton convergence", 0, {}};
  Gen g(seed + 4);
  const long primes[] = {2, 3, 5, 7};
  for (int i = 0; i < cases && o.ok(); ++i, ++o.cases) {
    long p = primes[g.range(0, 3)];
    auto F = FqField::make(p, 1);
    auto ring = SeriesRing::make(F, ExponentDomain::puiseux(2));
    // f = (X - r) * (X - s) + t^(1/2) * k(X) with residues r != s.
    long r = g.range(0, p - 1);
    long s = (r + g.range(1, p - 1)) % p;
    SeriesElem tr = SeriesElem::monomial(ring, F->one(), make_q(1, 2));
    SeriesElem k0 = g.series(ring, 2, 0, 2), k1 = g.series(ring, 2, 0, 2);
    std::vector<SeriesElem> poly{SeriesElem::constant(ring, r * s) + tr * k0,
                                 SeriesElem::constant(ring, -(r + s)) + tr * k1, SeriesElem::one(ring)};
    const Rational target = 24;
    auto prob = make_lift_problem(poly, F->from_int(r), target);
    auto res = hensel_lift_traced(prob);
    if (check_quadratic(res.trace, prob.target_precision) != Convergence::Quadratic) {
      std::string t;
      for (const auto& step : res.trace) t += step.to_string() + " ";
      o.failure = "trace " + t + "for p=" + std::to_string(p);
    }
    SeriesElem z = res.root;
    SeriesElem val = poly[0] + poly[1] * z + z * z;
    auto low = val.value_lower_bound();
    if (low && *low < target) o.failure = "residual below target for p=" + std::to_string(p);
    if (!(z.residue() == F->from_int(r))) o.failure = "root has the wrong residue";
  }
  return o;
}

inline std::vector<Outcome> all(std::uint64_t seed = kSeed, int cases = kCases) {
  return {valuation_axioms(seed, cases), residue_homomorphism(seed, cases), canonical_form_idempotence(seed, cases),
          index_multiplicativity(seed, cases), newton_quadratic(seed, cases)};
}

}  // namespace props
