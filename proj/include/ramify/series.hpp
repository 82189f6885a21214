#pragma once

// Truncated generalized power series in t with rational exponents over a
// finite field: elements of k((t)), its Puiseux extensions, and finite-level
// truncations of the perfect hull of F_p((t)).

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/common.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/resfield.hpp"

namespace ramify {

/// Which exponents a series ring admits.
struct ExponentDomain {
  enum class Mode { Puiseux, PerfectHull };
  Mode mode = Mode::Puiseux;
  /// Puiseux: every exponent denominator divides `bound`.
  /// PerfectHull: denominators are p^i with i <= bound (p = characteristic).
  long bound = 1;

  static ExponentDomain puiseux(long ramification_bound) { return {Mode::Puiseux, ramification_bound}; }
  static ExponentDomain perfect_hull(unsigned max_exponent = 64) {
    return {Mode::PerfectHull, static_cast<long>(max_exponent)};
  }
};

class SeriesRing;
using RingRef = std::shared_ptr<const SeriesRing>;

class SeriesRing : public std::enable_shared_from_this<SeriesRing> {
 public:
  static constexpr long kDefaultPrecision = 64;

  static RingRef make(FieldRef field, ExponentDomain domain = ExponentDomain::puiseux(1),
                      Rational default_precision = kDefaultPrecision) {
    if (domain.bound < 1 && domain.mode == ExponentDomain::Mode::Puiseux)
      throw precondition_error("ramification bound must be positive");
    return RingRef(new SeriesRing(std::move(field), domain, std::move(default_precision)));
  }

  const FieldRef& field() const { return field_; }
  long characteristic() const { return field_->characteristic(); }
  const ExponentDomain& domain() const { return domain_; }
  const Rational& default_precision() const { return default_precision_; }

  bool admits_exponent(const Rational& e) const {
    const Integer& den = e.get_den();
    if (domain_.mode == ExponentDomain::Mode::Puiseux) return Integer(domain_.bound) % den == 0;
    if (den == 1) return true;
    Integer p = characteristic();
    return is_power_of(den, p) && valuation_at(den, p) <= static_cast<unsigned long>(domain_.bound);
  }

  void check_exponent(const Rational& e) const {
    if (!admits_exponent(e))
      throw precondition_error("exponent " + e.get_str() + " outside the ring's exponent domain (bound " +
                               std::to_string(domain_.bound) + ")");
  }

  /// Value group of the ring's exponents: (1/bound)Z, or Z[1/p].
  ValueGroup value_group() const {
    if (domain_.mode == ExponentDomain::Mode::Puiseux) return ValueGroup::cyclic(make_q(1, domain_.bound));
    return ValueGroup::p_divisible(characteristic(), ValueGroup::standard(1),
                                   static_cast<unsigned>(domain_.bound));
  }

 private:
  SeriesRing(FieldRef field, ExponentDomain domain, Rational prec)
      : field_(std::move(field)), domain_(domain), default_precision_(std::move(prec)) {}

  FieldRef field_;
  ExponentDomain domain_;
  Rational default_precision_;
};

class SeriesElem {
 public:
  using Terms = std::map<Rational, FqElem>;

  SeriesElem() = default;

  static SeriesElem zero(RingRef ring) { return SeriesElem(std::move(ring), {}, std::nullopt); }
  static SeriesElem constant(RingRef ring, const FqElem& c) { return monomial(std::move(ring), c, 0); }
  static SeriesElem constant(RingRef ring, long c) {
    FqElem k = ring->field()->from_int(c);
    return monomial(std::move(ring), k, 0);
  }
  static SeriesElem one(RingRef ring) { return constant(std::move(ring), 1); }

  /// c * t^e, exact.
  static SeriesElem monomial(RingRef ring, const FqElem& c, const Rational& e) {
    ring->check_exponent(e);
    Terms t;
    if (!c.is_zero()) t.emplace(e, c);
    return SeriesElem(std::move(ring), std::move(t), std::nullopt);
  }

  static SeriesElem from_terms(RingRef ring, Terms terms, std::optional<Rational> precision) {
    for (const auto& [e, c] : terms) ring->check_exponent(e);
    if (precision) ring->check_exponent(*precision);
    return SeriesElem(std::move(ring), std::move(terms), std::move(precision));
  }

  const RingRef& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  /// Exponent cutoff; nullopt means the element is exact.
  const std::optional<Rational>& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }

  FqElem coefficient(const Rational& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ring_->field()->zero() : it->second;
  }

  /// Least exponent carrying a nonzero coefficient; nullopt for exact zero.
  /// Raises undetermined_value when the element is zero up to a finite precision.
  std::optional<Rational> valuation() const {
    if (!terms_.empty()) return terms_.begin()->first;
    if (is_exact()) return std::nullopt;
    throw undetermined_value("valuation undetermined: zero up to precision " + precision_->get_str());
  }

  /// The valuation when determined, otherwise the precision (a lower bound).
  /// nullopt for exact zero.
  std::optional<Rational> value_lower_bound() const {
    if (!terms_.empty()) return terms_.begin()->first;
    return precision_;
  }

  GroupElem value() const {
    auto v = valuation();
    if (!v) throw precondition_error("value of zero is infinite");
    return GroupElem{*v};
  }

  FqElem leading_coefficient() const {
    if (terms_.empty()) throw undetermined_value("leading coefficient of a zero series");
    return terms_.begin()->second;
  }

  /// Residue of an element of nonnegative value.
  FqElem residue() const {
    if (terms_.empty()) {
      if (is_exact() || *precision_ > 0) return ring_->field()->zero();
      throw undetermined_value("residue undetermined at precision " + precision_->get_str());
    }
    if (terms_.begin()->first < 0)
      throw precondition_error("residue of an element of negative value " + terms_.begin()->first.get_str());
    return coefficient(0);
  }

  /// Drops everything at or above `cutoff`.
  SeriesElem truncated(const Rational& cutoff) const {
    Rational p = precision_ ? std::min(*precision_, cutoff) : cutoff;
    Terms t;
    for (const auto& [e, c] : terms_) {
      if (e >= p) break;
      t.emplace(e, c);
    }
    return SeriesElem(ring_, std::move(t), p);
  }

  /// Same element with its precision set to min(current, cutoff); exact
  /// elements become truncated ones.
  SeriesElem with_precision(const Rational& cutoff) const { return truncated(cutoff); }

  /// Termwise equality below `cutoff` (and below both precisions).
  bool agrees_with(const SeriesElem& o, const Rational& cutoff) const {
    Rational lim = cutoff;
    if (precision_) lim = std::min(lim, *precision_);
    if (o.precision_) lim = std::min(lim, *o.precision_);
    auto a = truncated(lim).terms_;
    auto b = o.truncated(lim).terms_;
    return a == b;
  }

  friend bool operator==(const SeriesElem& a, const SeriesElem& b) {
    return a.terms_ == b.terms_ && a.precision_ == b.precision_;
  }

  SeriesElem operator-() const {
    SeriesElem r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend SeriesElem operator+(const SeriesElem& a, const SeriesElem& b) { return a.combine(b, false); }
  friend SeriesElem operator-(const SeriesElem& a, const SeriesElem& b) { return a.combine(b, true); }

  friend SeriesElem operator*(const SeriesElem& a, const SeriesElem& b) {
    a.check_ring(b);
    if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.ring_);
    std::optional<Rational> prec;
    auto la = a.value_lower_bound();
    auto lb = b.value_lower_bound();
    if (a.precision_) prec = *a.precision_ + *lb;
    if (b.precision_) {
      Rational q = *b.precision_ + *la;
      prec = prec ? std::min(*prec, q) : q;
    }
    return SeriesElem(a.ring_, mul_terms(a.terms_, b.terms_, prec), prec);
  }

  SeriesElem& operator+=(const SeriesElem& o) { return *this = *this + o; }
  SeriesElem& operator-=(const SeriesElem& o) { return *this = *this - o; }
  SeriesElem& operator*=(const SeriesElem& o) { return *this = *this * o; }

  /// Multiplies by a residue-field scalar.
  SeriesElem scaled(const FqElem& c) const {
    if (c.is_zero()) return precision_ ? SeriesElem(ring_, {}, precision_) : zero(ring_);
    SeriesElem r = *this;
    for (auto& [e, x] : r.terms_) x *= c;
    return r;
  }

  /// Multiplies by t^q.
  SeriesElem shifted(const Rational& q) const {
    ring_->check_exponent(q);
    Terms t;
    for (const auto& [e, c] : terms_) t.emplace(e + q, c);
    std::optional<Rational> p;
    if (precision_) p = *precision_ + q;
    return SeriesElem(ring_, std::move(t), p);
  }

  /// x -> x^p in characteristic p: exact on terms, precision scales by p.
  SeriesElem frobenius() const {
    const long p = ring_->characteristic();
    Terms t;
    for (const auto& [e, c] : terms_) t.emplace(e * p, c.frobenius());
    std::optional<Rational> prec;
    if (precision_) prec = *precision_ * p;
    return SeriesElem(ring_, std::move(t), prec);
  }

  /// Multiplicative inverse. For exact input the result is truncated at
  /// `cutoff` (default: the ring's default precision); for truncated input the
  /// precision is the propagated one, additionally capped by `cutoff` if given.
  SeriesElem inverse(std::optional<Rational> cutoff = std::nullopt) const {
    if (terms_.empty()) throw division_by_zero("inverse of a series that is zero up to its precision");
    const Rational v = terms_.begin()->first;
    const FqElem lead_inv = terms_.begin()->second.inverse();
    Rational target;
    if (precision_) {
      target = *precision_ - 2 * v;
      if (cutoff) target = std::min(target, *cutoff);
    } else {
      target = cutoff ? *cutoff : ring_->default_precision();
    }
    // u = x / (c t^v) = 1 + h, h of positive value; invert u to relative precision R.
    const Rational R = target + v;
    Terms u;
    for (const auto& [e, c] : terms_) u.emplace(e - v, c * lead_inv);
    Terms y;
    y.emplace(Rational(0), ring_->field()->one());
    if (R <= 0) y.clear();
    Rational w = R;
    if (u.size() > 1) w = std::next(u.begin())->first;
    Terms two;
    two.emplace(Rational(0), ring_->field()->from_int(2));
    while (w < R) {
      w = std::min<Rational>(2 * w, R);
      Terms uy = mul_terms(truncate_terms(u, w), y, w);
      // y <- y * (2 - u*y)
      Terms corr = two;
      for (const auto& [e, c] : uy) add_term(corr, e, -c);
      y = mul_terms(y, corr, w);
    }
    y = truncate_terms(y, R);
    Terms out;
    for (const auto& [e, c] : y) out.emplace(e - v, c * lead_inv);
    return SeriesElem(ring_, std::move(out), target);
  }

  SeriesElem pow(Integer n, std::optional<Rational> cutoff = std::nullopt) const {
    if (n < 0) return inverse(cutoff).pow(-n);
    const long p = ring_->characteristic();
    if (n == 0) return one(ring_);
    if (n % p == 0) return frobenius().pow(n / p, cutoff);
    SeriesElem result = one(ring_);
    SeriesElem base = *this;
    while (true) {
      if (mpz_odd_p(n.get_mpz_t())) result *= base;
      n >>= 1;
      if (n == 0) break;
      base *= base;
    }
    return result;
  }
  SeriesElem pow(long n) const { return pow(Integer(n)); }

  std::string to_string() const {
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += term_string(c, e);
    }
    if (s.empty()) s = "0";
    if (precision_) s += " + O(t^(" + precision_->get_str() + "))";
    return s;
  }

 private:
  SeriesElem(RingRef ring, Terms terms, std::optional<Rational> precision)
      : ring_(std::move(ring)), terms_(std::move(terms)), precision_(std::move(precision)) {}

  friend SeriesElem parse_series(const RingRef&, const std::string&);

  static std::string term_string(const FqElem& c, const Rational& e) {
    std::string cs = c.to_string();
    bool compound = cs.find(' ') != std::string::npos || cs.find('*') != std::string::npos;
    if (e == 0) return compound ? "(" + cs + ")" : cs;
    std::string ts = "t^(" + e.get_str() + ")";
    if (c.is_one()) return ts;
    return (compound ? "(" + cs + ")" : cs) + "*" + ts;
  }

  static void add_term(Terms& t, const Rational& e, const FqElem& c) {
    auto [it, inserted] = t.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    } else if (c.is_zero()) {
      t.erase(it);
    }
  }

  static Terms truncate_terms(const Terms& t, const Rational& cutoff) {
    Terms r;
    for (const auto& [e, c] : t) {
      if (e >= cutoff) break;
      r.emplace(e, c);
    }
    return r;
  }

  static Terms mul_terms(const Terms& a, const Terms& b, const std::optional<Rational>& cutoff) {
    Terms r;
    for (const auto& [ea, ca] : a) {
      if (!b.empty() && cutoff && ea + b.begin()->first >= *cutoff) break;
      for (const auto& [eb, cb] : b) {
        Rational e = ea + eb;
        if (cutoff && e >= *cutoff) break;
        add_term(r, e, ca * cb);
      }
    }
    return r;
  }

  void check_ring(const SeriesElem& o) const {
    if (!ring_ || !o.ring_) throw precondition_error("series element without a ring");
    if (ring_ != o.ring_ && !(*ring_->field() == *o.ring_->field()))
      throw field_mismatch("series over different coefficient fields");
  }

  SeriesElem combine(const SeriesElem& o, bool subtract) const {
    check_ring(o);
    std::optional<Rational> prec = precision_;
    if (o.precision_) prec = prec ? std::min(*prec, *o.precision_) : *o.precision_;
    Terms r = prec ? truncate_terms(terms_, *prec) : terms_;
    for (const auto& [e, c] : o.terms_) {
      if (prec && e >= *prec) break;
      add_term(r, e, subtract ? -c : c);
    }
    return SeriesElem(ring_, std::move(r), prec);
  }

  RingRef ring_;
  Terms terms_;
  std::optional<Rational> precision_;
};

/// t^q with coefficient 1.
inline SeriesElem adjoin_fractional_t(const RingRef& ring, const Rational& q) {
  return SeriesElem::monomial(ring, ring->field()->one(), q);
}

inline std::optional<Rational> valuation(const SeriesElem& x) { return x.valuation(); }
inline FqElem residue(const SeriesElem& x) { return x.residue(); }

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits on `sep` characters that are outside parentheses; keeps the separator
// as the first character of each following piece.
inline std::vector<std::string> split_top_level(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw parse_error("unbalanced parentheses in '" + s + "'");
    if (depth == 0 && seps.find(ch) != std::string::npos) {
      out.push_back(cur);
      cur = std::string(1, ch);
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw parse_error("unbalanced parentheses in '" + s + "'");
  out.push_back(cur);
  return out;
}

// "t", "t^2", "t^(1/3)", "t^(-1/2)"
inline Rational parse_t_exponent(const std::string& f) {
  if (f == "t") return 1;
  if (f.size() < 3 || f[0] != 't' || f[1] != '^') throw parse_error("malformed power of t '" + f + "'");
  std::string e = f.substr(2);
  if (e.front() == '(') {
    if (e.back() != ')') throw parse_error("malformed exponent '" + f + "'");
    e = e.substr(1, e.size() - 2);
  }
  return parse_rational(strip(e));
}

}  // namespace detail

/// Parses `coeff*t^(num/den)` terms joined by `+` (or `-`), with an optional
/// trailing `O(t^(r))` precision marker. Coefficients are polynomials in `g`,
/// parenthesized when they have more than one term.
inline SeriesElem parse_series(const RingRef& ring, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw parse_error("empty series literal");
  SeriesElem::Terms terms;
  std::optional<Rational> precision;
  auto pieces = detail::split_top_level(s, "+-");
  for (std::size_t idx = 0; idx < pieces.size(); ++idx) {
    std::string piece = pieces[idx];
    if (idx == 0 && piece.empty() && pieces.size() > 1) continue;  // leading sign
    bool neg = false;
    if (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      neg = piece[0] == '-';
      piece.erase(0, 1);
    }
    if (piece.empty()) throw parse_error("empty term in '" + text + "'");
    if (piece.rfind("O(", 0) == 0) {
      if (piece.back() != ')') throw parse_error("malformed precision marker in '" + text + "'");
      precision = detail::parse_t_exponent(piece.substr(2, piece.size() - 3));
      continue;
    }
    FqElem coeff = ring->field()->one();
    Rational exponent = 0;
    for (std::string factor : detail::split_top_level(piece, "*")) {
      if (!factor.empty() && factor[0] == '*') factor.erase(0, 1);
      if (factor.empty()) throw parse_error("empty factor in '" + text + "'");
      if (factor[0] == 't') {
        exponent += detail::parse_t_exponent(factor);
      } else if (factor[0] == '(') {
        if (factor.back() != ')') throw parse_error("malformed coefficient '" + factor + "'");
        coeff *= parse_fq(ring->field(), factor.substr(1, factor.size() - 2));
      } else {
        coeff *= parse_fq(ring->field(), factor);
      }
    }
    if (neg) coeff = -coeff;
    ring->check_exponent(exponent);
    SeriesElem::add_term(terms, exponent, coeff);
  }
  if (precision) {
    ring->check_exponent(*precision);
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->first >= *precision) throw parse_error("term at or above the precision marker in '" + text + "'");
      ++it;
    }
  }
  return SeriesElem(ring, std::move(terms), precision);
}

}  // namespace ramify
