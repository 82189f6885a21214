#pragma once

// Finitely generated ordered abelian groups, realized as lattices in Q^n with
// the lexicographic order, plus the Z[1/p]-saturated family used for perfect
// hulls.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/common.hpp"

namespace ramify {

class GroupElem {
 public:
  GroupElem() = default;
  explicit GroupElem(std::size_t rank) : coords_(rank) {}
  explicit GroupElem(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  GroupElem(std::initializer_list<Rational> coords) : coords_(coords) {}

  static GroupElem unit(std::size_t rank, std::size_t axis, Rational scale = 1) {
    GroupElem g(rank);
    g.coords_.at(axis) = std::move(scale);
    return g;
  }

  std::size_t rank() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
  }

  GroupElem& operator+=(const GroupElem& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  GroupElem& operator-=(const GroupElem& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  GroupElem& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend GroupElem operator+(GroupElem a, const GroupElem& b) { return a += b; }
  friend GroupElem operator-(GroupElem a, const GroupElem& b) { return a -= b; }
  friend GroupElem operator-(GroupElem a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend GroupElem operator*(const Rational& s, GroupElem a) { return a *= s; }
  friend GroupElem operator*(GroupElem a, const Rational& s) { return a *= s; }

  friend bool operator==(const GroupElem& a, const GroupElem& b) {
    a.check_rank(b);
    return a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const GroupElem& a, const GroupElem& b) {
    a.check_rank(b);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      int c = cmp(a.coords_[i], b.coords_[i]);
      if (c < 0) return std::strong_ordering::less;
      if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (coords_.size() == 1) return coords_[0].get_str();
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ", ";
      s += coords_[i].get_str();
    }
    return s + ")";
  }

 private:
  void check_rank(const GroupElem& o) const {
    if (o.coords_.size() != coords_.size())
      throw dimension_mismatch("group elements of rank " + std::to_string(coords_.size()) +
                               " and " + std::to_string(o.coords_.size()));
  }

  std::vector<Rational> coords_;
};

inline std::strong_ordering lex_compare(const GroupElem& a, const GroupElem& b) { return a <=> b; }

/// Group index (G : D). std::nullopt stands for an infinite index.
using GroupIndex = std::optional<Integer>;
inline constexpr std::nullopt_t kInfiniteIndex = std::nullopt;

inline std::string to_string(const GroupIndex& idx) {
  return idx ? idx->get_str() : std::string("INFINITE");
}

class ValueGroup {
 public:
  enum class Kind { Lattice, PDivisible };

  static constexpr unsigned kDefaultExponentBound = 64;

  /// Lattice generated by `generators` in Q^rank, in canonical echelon form.
  /// Zero generators are dropped; an empty list gives the trivial group.
  static ValueGroup lattice(const std::vector<GroupElem>& generators, std::size_t rank) {
    for (const auto& g : generators)
      if (g.rank() != rank)
        throw dimension_mismatch("generator of rank " + std::to_string(g.rank()) +
                                 " in a group of ambient rank " + std::to_string(rank));
    ValueGroup G;
    G.rank_ = rank;
    G.basis_ = echelon(generators, rank, G.pivots_);
    return G;
  }

  /// Z^rank (the standard lattice).
  static ValueGroup standard(std::size_t rank) {
    std::vector<GroupElem> gens;
    for (std::size_t i = 0; i < rank; ++i) gens.push_back(GroupElem::unit(rank, i));
    return lattice(gens, rank);
  }

  /// q * Z in rank 1.
  static ValueGroup cyclic(const Rational& q) { return lattice({GroupElem{q}}, 1); }

  static ValueGroup trivial(std::size_t rank) { return lattice({}, rank); }

  /// The union over i of (1/p^i) * base, with membership tested up to
  /// p^exponent_bound.
  static ValueGroup p_divisible(long p, const ValueGroup& base,
                                unsigned exponent_bound = kDefaultExponentBound) {
    if (!is_prime(p)) throw precondition_error("p-divisible group needs a prime, got " + std::to_string(p));
    if (base.kind_ != Kind::Lattice) throw precondition_error("p-divisible base must be a lattice");
    ValueGroup G = base;
    G.kind_ = Kind::PDivisible;
    G.prime_ = p;
    G.exponent_bound_ = exponent_bound;
    return G;
  }

  Kind kind() const { return kind_; }
  bool is_lattice() const { return kind_ == Kind::Lattice; }
  bool is_p_divisible() const { return kind_ == Kind::PDivisible; }
  long prime() const { return prime_; }
  unsigned exponent_bound() const { return exponent_bound_; }
  std::size_t ambient_rank() const { return rank_; }

  /// Canonical basis of the lattice (of the base lattice for p-divisible groups).
  const std::vector<GroupElem>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  ValueGroup base() const {
    ValueGroup B = *this;
    B.kind_ = Kind::Lattice;
    B.prime_ = 0;
    return B;
  }

  std::size_t rational_rank() const { return basis_.size(); }

  /// Coordinates of g in the canonical basis over Q, or nullopt if g lies
  /// outside the Q-span.
  std::optional<std::vector<Rational>> coordinates(const GroupElem& g) const {
    check_rank(g.rank());
    GroupElem r = g;
    std::vector<Rational> coef(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t c = pivots_[i];
      coef[i] = r[c] / basis_[i][c];
      if (coef[i] != 0) r -= coef[i] * basis_[i];
    }
    if (!r.is_zero()) return std::nullopt;
    return coef;
  }

  bool contains(const GroupElem& g) const {
    auto coef = coordinates(g);
    if (!coef) return false;
    for (const auto& c : *coef) {
      if (kind_ == Kind::Lattice) {
        if (!is_integral(c)) return false;
      } else {
        Integer den = c.get_den();
        if (!is_power_of(den, prime_)) return false;
        if (den != 1 && valuation_at(den, prime_) > exponent_bound_) return false;
      }
    }
    return true;
  }

  /// Subgroup test: H is contained in *this.
  bool contains(const ValueGroup& H) const {
    check_rank(H.rank_);
    if (H.kind_ == Kind::PDivisible && H.rational_rank() > 0) {
      if (kind_ != Kind::PDivisible || prime_ != H.prime_) return false;
    }
    return std::all_of(H.basis_.begin(), H.basis_.end(),
                       [&](const GroupElem& b) { return contains(b); });
  }

  friend bool operator==(const ValueGroup& a, const ValueGroup& b) {
    if (a.rank_ != b.rank_) return false;
    if (a.kind_ == Kind::Lattice && b.kind_ == Kind::Lattice) return a.basis_ == b.basis_;
    return a.contains(b) && b.contains(a);
  }

  std::string to_string() const {
    std::string body;
    if (rank_ == 1 && basis_.size() == 1) {
      const Rational& q = basis_[0][0];
      if (q == 1)
        body = "Z";
      else if (is_integral(q))
        body = q.get_str() + "Z";
      else
        body = "(" + q.get_str() + ")Z";
    } else if (basis_.empty()) {
      body = "0";
    } else {
      body = "<";
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i) body += ", ";
        body += basis_[i].to_string();
      }
      body += ">";
    }
    if (kind_ == Kind::PDivisible) return "Z[1/" + std::to_string(prime_) + "]*" + body;
    return body;
  }

 private:
  void check_rank(std::size_t r) const {
    if (r != rank_)
      throw dimension_mismatch("rank " + std::to_string(r) + " against ambient rank " +
                               std::to_string(rank_));
  }

  // Row-style Hermite normal form over Z after clearing denominators: pivots
  // positive, entries above each pivot reduced into [0, pivot). Scaling back
  // by the common denominator keeps the form unique per group.
  static std::vector<GroupElem> echelon(const std::vector<GroupElem>& gens, std::size_t n,
                                        std::vector<std::size_t>& pivots) {
    Integer den = 1;
    for (const auto& g : gens)
      for (const auto& c : g.coords()) den = lcm(den, c.get_den());
    std::vector<std::vector<Integer>> rows;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      std::vector<Integer> row(n);
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = g[j] * den;
        row[j] = s.get_num();
      }
      rows.push_back(std::move(row));
    }

    std::size_t r = 0;
    pivots.clear();
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
      while (true) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
        }
        if (best == rows.size()) break;
        std::swap(rows[r], rows[best]);
        bool done = true;
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
          if (rows[i][col] == 0) continue;
          Integer q = floor_div(rows[i][col], rows[r][col]);
          for (std::size_t j = col; j < n; ++j) rows[i][j] -= q * rows[r][j];
          if (rows[i][col] != 0) done = false;
        }
        if (done) break;
      }
      if (r >= rows.size() || rows[r][col] == 0) continue;
      if (rows[r][col] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = floor_div(rows[i][col], rows[r][col]);
        if (q != 0)
          for (std::size_t j = col; j < n; ++j) rows[i][j] -= q * rows[r][j];
      }
      pivots.push_back(col);
      ++r;
    }

    std::vector<GroupElem> basis;
    for (std::size_t i = 0; i < r; ++i) {
      GroupElem b(n);
      for (std::size_t j = 0; j < n; ++j) b[j] = make_q(rows[i][j], den);
      basis.push_back(std::move(b));
    }
    return basis;
  }

  Kind kind_ = Kind::Lattice;
  std::size_t rank_ = 0;
  long prime_ = 0;
  unsigned exponent_bound_ = kDefaultExponentBound;
  std::vector<GroupElem> basis_;
  std::vector<std::size_t> pivots_;
};

inline ValueGroup make_lattice(const std::vector<GroupElem>& generators, std::size_t ambient_rank) {
  return ValueGroup::lattice(generators, ambient_rank);
}

namespace detail {

inline std::vector<GroupElem> joined_basis(const ValueGroup& a, const ValueGroup& b) {
  std::vector<GroupElem> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return gens;
}

// Product of pivots, i.e. the covolume of a lattice inside its Q-span.
inline Rational pivot_product(const ValueGroup& G) {
  Rational prod = 1;
  for (std::size_t i = 0; i < G.basis().size(); ++i) prod *= G.basis()[i][G.pivot_columns()[i]];
  return prod;
}

// Index of lattices D <= G of equal rational rank.
inline Integer lattice_index(const ValueGroup& G, const ValueGroup& D) {
  Rational ratio = pivot_product(D) / pivot_product(G);
  if (!is_integral(ratio)) throw error("internal: non-integral lattice index " + ratio.get_str());
  return ratio.get_num();
}

}  // namespace detail

/// Smallest group containing both arguments.
inline ValueGroup compositum(const ValueGroup& a, const ValueGroup& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw dimension_mismatch("compositum of groups with ambient ranks " +
                             std::to_string(a.ambient_rank()) + " and " + std::to_string(b.ambient_rank()));
  auto sum = ValueGroup::lattice(detail::joined_basis(a, b), a.ambient_rank());
  if (a.is_lattice() && b.is_lattice()) return sum;
  if (a.is_p_divisible() && b.is_p_divisible()) {
    if (a.prime() != b.prime())
      throw precondition_error("compositum of p-divisible groups for distinct primes " +
                               std::to_string(a.prime()) + " and " + std::to_string(b.prime()));
    return ValueGroup::p_divisible(a.prime(), sum, std::max(a.exponent_bound(), b.exponent_bound()));
  }
  const ValueGroup& pd = a.is_p_divisible() ? a : b;
  return ValueGroup::p_divisible(pd.prime(), sum, pd.exponent_bound());
}

/// (G : D). Raises if D is not contained in G.
inline GroupIndex index(const ValueGroup& G, const ValueGroup& D) {
  if (G.ambient_rank() != D.ambient_rank())
    throw dimension_mismatch("index of groups with different ambient ranks");
  if (!G.contains(D)) throw precondition_error("index: " + D.to_string() + " is not a subgroup of " + G.to_string());
  if (G.rational_rank() != D.rational_rank()) return kInfiniteIndex;
  if (G.is_lattice() && D.is_lattice()) return detail::lattice_index(G, D);
  if (G.is_p_divisible() && D.is_p_divisible()) {
    // Localizing at p kills the p-part of the index of the base lattices.
    auto top = ValueGroup::lattice(detail::joined_basis(G, D), G.ambient_rank());
    return strip_prime(detail::lattice_index(top, D.base()), G.prime());
  }
  // p-divisible over a lattice of the same nonzero rank: Z[1/p]/Z is infinite.
  if (G.rational_rank() == 0) return Integer(1);
  return kInfiniteIndex;
}

/// Least n >= 1 with n*b in D; INFINITE if b is outside the divisible hull of D.
inline GroupIndex order_mod(const GroupElem& b, const ValueGroup& D) {
  auto coef = D.coordinates(b);
  if (!coef) return kInfiniteIndex;
  Integer n = 1;
  for (const auto& c : *coef) {
    Integer den = c.get_den();
    if (D.is_p_divisible()) {
      unsigned long k = den == 1 ? 0 : valuation_at(den, D.prime());
      if (k > D.exponent_bound()) return kInfiniteIndex;
      den = strip_prime(den, D.prime());
    }
    n = lcm(n, den);
  }
  return n;
}

/// (1/e) D: all alpha in the divisible hull with e*alpha in D.
inline ValueGroup fractional(const ValueGroup& D, long e) {
  if (e <= 0) throw precondition_error("fractional: e must be positive, got " + std::to_string(e));
  if (!D.is_lattice()) throw precondition_error("fractional: D must be a lattice");
  std::vector<GroupElem> gens;
  for (const auto& b : D.basis()) gens.push_back(make_q(1, e) * b);
  return ValueGroup::lattice(gens, D.ambient_rank());
}

/// Maximal subgroup of G containing D in which no nonzero class modulo D has
/// order divisible by p.
inline ValueGroup p_prime_part(const ValueGroup& G, const ValueGroup& D, long p) {
  if (!is_prime(p)) throw precondition_error("p_prime_part: " + std::to_string(p) + " is not prime");
  GroupIndex idx = index(G, D);
  if (!idx) throw precondition_error("p_prime_part: infinite index (" + G.to_string() + " : " + D.to_string() + ")");
  Integer N = *idx;
  if (G.is_p_divisible() && G.prime() == p) return G;
  unsigned long k = valuation_at(N, Integer(p));
  Integer scale = ipow(Integer(p), k);
  std::vector<GroupElem> gens;
  for (const auto& g : G.basis()) gens.push_back(Rational(scale) * g);
  gens.insert(gens.end(), D.basis().begin(), D.basis().end());
  auto L = ValueGroup::lattice(gens, G.ambient_rank());
  if (G.is_p_divisible()) return ValueGroup::p_divisible(G.prime(), L, G.exponent_bound());
  return L;
}

inline std::size_t rational_rank(const ValueGroup& G) { return G.rational_rank(); }

/// True iff (G : D) is a power of p (p^0 included).
inline bool is_p_group_quotient(const ValueGroup& G, const ValueGroup& D, long p) {
  GroupIndex idx = index(G, D);
  if (!idx) throw precondition_error("is_p_group_quotient: infinite index");
  return is_power_of(*idx, Integer(p));
}

/// Whether a + D and b + D are F_q-linearly independent in (1/q)D / D.
inline bool fq_independent(const GroupElem& a, const GroupElem& b, long q, const ValueGroup& D) {
  if (!is_prime(q)) throw precondition_error("fq_independent: q must be prime");
  if (!D.contains(Rational(q) * a) || !D.contains(Rational(q) * b))
    throw precondition_error("fq_independent: q*a and q*b must lie in D");
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j) {
      if (i == 0 && j == 0) continue;
      if (D.contains(Rational(i) * a + Rational(j) * b)) return false;
    }
  return true;
}

/// A complete set of representatives of G/D for lattices of equal rank.
/// Raises when the index exceeds `cap`.
inline std::vector<GroupElem> coset_representatives(const ValueGroup& G, const ValueGroup& D,
                                                    long cap = 1'000'000) {
  if (!G.is_lattice() || !D.is_lattice()) throw precondition_error("coset_representatives: lattices only");
  GroupIndex idx = index(G, D);
  if (!idx) throw precondition_error("coset_representatives: infinite index");
  if (*idx > cap) throw precondition_error("coset_representatives: index " + idx->get_str() + " above cap");
  // Same pivot columns; the relation matrix is triangular with these diagonals.
  std::vector<long> diag;
  for (std::size_t i = 0; i < G.basis().size(); ++i) {
    std::size_t c = G.pivot_columns()[i];
    Rational m = D.basis()[i][c] / G.basis()[i][c];
    diag.push_back(m.get_num().get_si());
  }
  std::vector<GroupElem> reps{GroupElem(G.ambient_rank())};
  for (std::size_t i = 0; i < diag.size(); ++i) {
    std::vector<GroupElem> next;
    for (const auto& r : reps)
      for (long c = 0; c < diag[i]; ++c) next.push_back(r + Rational(c) * G.basis()[i]);
    reps = std::move(next);
  }
  return reps;
}

}  // namespace ramify
