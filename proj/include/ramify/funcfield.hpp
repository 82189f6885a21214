#pragma once

// Rational function fields K(y) over a series coefficient field, with Gauss
// valuations in four flavours, and truncated elements of the corresponding
// completions on which Newton iteration runs.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/common.hpp"
#include "ramify/hensel.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/resfield.hpp"
#include "ramify/series.hpp"

namespace ramify {

class GaussValuation {
 public:
  enum class Mode { PlainGauss, Shifted, ValueTranscendental, ComposedYAdic };

  static GaussValuation plain() { return {Mode::PlainGauss, GroupElem{Rational(0)}}; }
  /// min_i v(a_i) + i*delta.
  static GaussValuation shifted(const Rational& delta) { return {Mode::Shifted, GroupElem{delta}}; }
  /// Rank-2 values: coefficients land in (0, v) and y gets alpha = (a0, a1)
  /// with a0 > 0, so alpha exceeds every coefficient value and is non-torsion.
  static GaussValuation value_transcendental(const GroupElem& alpha) {
    if (alpha.rank() != 2) throw dimension_mismatch("value_transcendental: alpha must have rank 2");
    if (alpha[0] <= 0) throw precondition_error("value_transcendental: alpha must exceed every coefficient value");
    return {Mode::ValueTranscendental, alpha};
  }
  /// v_y composed with v: y-adic order first, coefficient value second.
  static GaussValuation composed_y_adic() { return {Mode::ComposedYAdic, GroupElem{Rational(1), Rational(0)}}; }

  Mode mode() const { return mode_; }
  const GroupElem& y_value() const { return y_value_; }
  std::size_t rank() const { return y_value_.rank(); }
  bool is_rank_one() const { return rank() == 1; }
  GroupElem zero() const { return GroupElem(rank()); }

  GroupElem embed(const Rational& coeff_value) const {
    if (is_rank_one()) return GroupElem{coeff_value};
    return GroupElem{Rational(0), coeff_value};
  }

  /// Value of c*t^e*y^i for nonzero c.
  GroupElem term_value(long i, const Rational& e) const { return embed(e) + Rational(i) * y_value_; }

  ValueGroup value_group(const ValueGroup& coeff) const {
    if (is_rank_one()) {
      if (mode_ == Mode::PlainGauss || y_value_[0] == 0) return coeff;
      if (coeff.is_p_divisible())
        return ValueGroup::p_divisible(coeff.prime(), compositum(coeff.base(), ValueGroup::cyclic(y_value_[0])),
                                       coeff.exponent_bound());
      return compositum(coeff, ValueGroup::cyclic(y_value_[0]));
    }
    if (!coeff.is_lattice()) throw precondition_error("rank-2 value groups need a lattice coefficient group");
    std::vector<GroupElem> gens{y_value_};
    for (const auto& b : coeff.basis()) gens.push_back(embed(b[0]));
    return make_lattice(gens, 2);
  }

  std::string name() const {
    switch (mode_) {
      case Mode::PlainGauss: return "plain";
      case Mode::Shifted: return "shifted(" + y_value_[0].get_str() + ")";
      case Mode::ValueTranscendental: return "transcendental" + y_value_.to_string();
      case Mode::ComposedYAdic: return "composed";
    }
    return "";
  }

  /// Name of the residue of the normalized generator in rank-1 modes.
  std::string residue_symbol() const {
    if (y_value_[0] == 0 || !is_rank_one()) return "yv";
    return "(y/t^(" + y_value_[0].get_str() + "))v";
  }

 private:
  GaussValuation(Mode m, GroupElem y) : mode_(m), y_value_(std::move(y)) {}

  Mode mode_;
  GroupElem y_value_;
};

using ValRef = std::shared_ptr<const GaussValuation>;

inline ValRef share(GaussValuation v) { return std::make_shared<const GaussValuation>(std::move(v)); }

/// Laurent polynomial in y with series coefficients; exact zero slots are
/// never stored.
class YPoly {
 public:
  using Slots = std::map<long, SeriesElem>;

  explicit YPoly(RingRef ring) : ring_(std::move(ring)) {}

  static YPoly constant(const SeriesElem& c) { return monomial(c, 0); }
  static YPoly y(RingRef ring) { return monomial(SeriesElem::one(ring), 1); }
  static YPoly monomial(const SeriesElem& c, long i) {
    YPoly p(c.ring());
    if (!c.is_exact_zero()) p.slots_.emplace(i, c);
    return p;
  }
  static YPoly from_slots(RingRef ring, Slots slots) {
    YPoly p(std::move(ring));
    for (auto& [i, c] : slots)
      if (!c.is_exact_zero()) p.slots_.emplace(i, std::move(c));
    return p;
  }

  const RingRef& ring() const { return ring_; }
  const Slots& slots() const { return slots_; }
  bool is_zero() const { return slots_.empty(); }
  SeriesElem coefficient(long i) const {
    auto it = slots_.find(i);
    return it == slots_.end() ? SeriesElem::zero(ring_) : it->second;
  }

  friend YPoly operator+(const YPoly& a, const YPoly& b) { return combine(a, b, false); }
  friend YPoly operator-(const YPoly& a, const YPoly& b) { return combine(a, b, true); }
  friend YPoly operator-(const YPoly& a) { return combine(YPoly(a.ring_), a, true); }

  friend YPoly operator*(const YPoly& a, const YPoly& b) {
    YPoly r(a.ring_);
    for (const auto& [i, x] : a.slots_)
      for (const auto& [j, z] : b.slots_) r.accumulate(i + j, x * z);
    return r;
  }

  YPoly pow(unsigned long n) const {
    YPoly result = constant(SeriesElem::one(ring_));
    YPoly base = *this;
    while (n) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  std::string to_string() const {
    if (slots_.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : slots_) {
      if (!s.empty()) s += " + ";
      std::string cs = "(" + c.to_string() + ")";
      if (i == 0)
        s += cs;
      else if (i == 1)
        s += cs + "*y";
      else
        s += cs + "*y^" + std::to_string(i);
    }
    return s;
  }

 private:
  friend class GaussElem;

  static YPoly combine(const YPoly& a, const YPoly& b, bool subtract) {
    YPoly r = a;
    for (const auto& [i, c] : b.slots_) r.accumulate(i, subtract ? -c : c);
    return r;
  }

  void accumulate(long i, const SeriesElem& c) {
    auto it = slots_.find(i);
    if (it == slots_.end()) {
      if (!c.is_exact_zero()) slots_.emplace(i, c);
      return;
    }
    it->second += c;
    if (it->second.is_exact_zero()) slots_.erase(it);
  }

  RingRef ring_;
  Slots slots_;
};

namespace detail {

struct SlotBound {
  std::optional<GroupElem> determined;  // least determined term value
  std::optional<GroupElem> undetermined;  // least lower bound from zero-to-precision slots
};

inline SlotBound slot_bounds(const YPoly& f, const GaussValuation& val) {
  SlotBound b;
  for (const auto& [i, c] : f.slots()) {
    if (!c.terms().empty()) {
      GroupElem g = val.term_value(i, c.terms().begin()->first);
      if (!b.determined || g < *b.determined) b.determined = g;
    } else {
      GroupElem g = val.term_value(i, *c.precision());
      if (!b.undetermined || g < *b.undetermined) b.undetermined = g;
    }
  }
  return b;
}

}  // namespace detail

/// Gauss value of a polynomial: min over i of embed(v(a_i)) + i*y_value.
inline GroupElem gauss_value(const YPoly& f, const GaussValuation& val) {
  if (f.is_zero()) throw precondition_error("gauss_value of the zero polynomial is infinite");
  auto b = detail::slot_bounds(f, val);
  if (!b.determined) throw undetermined_value("gauss_value: every coefficient is zero up to its precision");
  if (b.undetermined && *b.undetermined <= *b.determined)
    throw undetermined_value("gauss_value: minimum not determined at coefficient precision");
  return *b.determined;
}

struct RatFunc {
  YPoly num;
  YPoly den;

  RatFunc(YPoly n, YPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw division_by_zero("rational function with zero denominator");
  }
  explicit RatFunc(YPoly n) : num(std::move(n)), den(YPoly::constant(SeriesElem::one(num.ring()))) {}

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return {a.num * b.den, a.den * b.num}; }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
};

inline GroupElem rat_value(const RatFunc& f, const GaussValuation& val) {
  GroupElem d = gauss_value(f.den, val);
  return gauss_value(f.num, val) - d;
}

/// Residue of a unit: a reduced rational function over the coefficient
/// residue field in one symbol (rank-1 modes), or a constant.
struct ResidueRatFunc {
  std::string symbol;
  std::vector<FqElem> num;  // low to high
  std::vector<FqElem> den;  // low to high, monic

  bool is_constant() const { return num.size() <= 1 && den.size() == 1; }
  FqElem constant_value() const {
    if (!is_constant()) throw precondition_error("residue is not a constant");
    return num.empty() ? den[0].field()->zero() : num[0];
  }

  std::string to_string() const {
    auto poly = [&](const std::vector<FqElem>& c) {
      std::string s;
      for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c[i].to_string();
        bool compound = cs.find_first_of("+ ") != std::string::npos;
        if (i == 0) {
          s += cs;
          continue;
        }
        if (!c[i].is_one()) s += (compound ? "(" + cs + ")" : cs) + "*";
        s += symbol;
        if (i > 1) s += "^" + std::to_string(i);
      }
      return s.empty() ? std::string("0") : s;
    };
    std::string n = poly(num);
    if (den.size() == 1) return n;
    return "(" + n + ")/(" + poly(den) + ")";
  }

  friend bool operator==(const ResidueRatFunc& a, const ResidueRatFunc& b) {
    return a.symbol == b.symbol && a.num == b.num && a.den == b.den;
  }
};

namespace detail {

using FqPoly = std::vector<FqElem>;

inline void trim(FqPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::pair<FqPoly, FqPoly> divmod(FqPoly a, const FqPoly& b) {
  trim(a);
  FqPoly q;
  if (a.size() < b.size()) return {q, a};
  const FqElem lead_inv = b.back().inverse();
  q.assign(a.size() - b.size() + 1, b.back().field()->zero());
  for (std::size_t s = a.size() - b.size() + 1; s-- > 0;) {
    const FqElem c = a[s + b.size() - 1] * lead_inv;
    q[s] = c;
    if (!c.is_zero())
      for (std::size_t j = 0; j < b.size(); ++j) a[s + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline FqPoly poly_gcd(FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace detail

inline ResidueRatFunc residue_of_unit(const RatFunc& f, const GaussValuation& val) {
  GroupElem g = gauss_value(f.num, val);
  GroupElem h = gauss_value(f.den, val);
  if (!(g == h)) throw precondition_error("residue_of_unit: value " + (g - h).to_string() + " is not zero");
  const FieldRef& field = f.num.ring()->field();

  if (!val.is_rank_one()) {
    // The minimum sits in a single slot i0 = g[0]/alpha[0].
    auto lead = [&](const YPoly& p) {
      Rational i0 = g[0] / val.y_value()[0];
      if (!is_integral(i0)) throw error("internal: non-integral leading slot");
      long i = i0.get_num().get_si();
      return p.coefficient(i).coefficient(g[1] - i * val.y_value()[1]);
    };
    return {"", {lead(f.num) / lead(f.den)}, {field->one()}};
  }

  const Rational& delta = val.y_value()[0];
  long low = std::min(f.num.slots().begin()->first, f.den.slots().begin()->first);
  auto reduce = [&](const YPoly& p) {
    detail::FqPoly out;
    for (const auto& [i, c] : p.slots()) {
      std::size_t k = static_cast<std::size_t>(i - low);
      if (out.size() <= k) out.resize(k + 1, field->zero());
      out[k] = c.coefficient(g[0] - i * delta);
    }
    detail::trim(out);
    return out;
  };
  detail::FqPoly n = reduce(f.num);
  detail::FqPoly d = reduce(f.den);
  detail::FqPoly common = detail::poly_gcd(n, d);
  n = detail::divmod(n, common).first;
  d = detail::divmod(d, common).first;
  FqElem s = d.back().inverse();
  for (auto& c : n) c *= s;
  for (auto& c : d) c *= s;
  return {val.residue_symbol(), n, d};
}

/// Element of the completion of (K(y), v) for a Gauss valuation v: a Laurent
/// polynomial plus an optional precision P (everything of value >= P is
/// unknown). Coefficient precisions are kept consistent with P.
class GaussElem {
 public:
  GaussElem(ValRef val, YPoly poly, std::optional<GroupElem> precision = std::nullopt)
      : val_(std::move(val)), poly_(std::move(poly)), precision_(std::move(precision)) {
    normalize();
  }

  static GaussElem constant(ValRef val, RingRef ring, long c) {
    return GaussElem(std::move(val), YPoly::constant(SeriesElem::constant(std::move(ring), c)));
  }
  static GaussElem from_series(ValRef val, const SeriesElem& c) {
    return GaussElem(std::move(val), YPoly::constant(c));
  }

  const ValRef& valuation() const { return val_; }
  const YPoly& poly() const { return poly_; }
  const RingRef& ring() const { return poly_.ring(); }
  const std::optional<GroupElem>& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }
  bool is_exact_zero() const { return poly_.is_zero() && is_exact(); }

  /// Value when determined, otherwise a lower bound; nullopt for exact zero.
  std::optional<GroupElem> value_lower_bound() const {
    auto b = detail::slot_bounds(poly_, *val_);
    std::optional<GroupElem> low = b.determined;
    if (b.undetermined && (!low || *b.undetermined < *low)) low = b.undetermined;
    if (precision_ && (!low || *precision_ < *low)) low = precision_;
    return low;
  }

  bool value_determined() const {
    auto b = detail::slot_bounds(poly_, *val_);
    if (!b.determined) return false;
    if (b.undetermined && *b.undetermined <= *b.determined) return false;
    return !precision_ || *b.determined < *precision_;
  }

  GroupElem value() const {
    if (is_exact_zero()) throw precondition_error("value of zero is infinite");
    if (!value_determined()) throw undetermined_value("Gauss value undetermined at precision");
    return *value_lower_bound();
  }

  GaussElem truncated(const GroupElem& cutoff) const {
    std::optional<GroupElem> p = cutoff;
    if (precision_ && *precision_ < cutoff) p = precision_;
    return GaussElem(val_, poly_, p);
  }

  friend GaussElem operator+(const GaussElem& a, const GaussElem& b) { return a.combine(b, false); }
  friend GaussElem operator-(const GaussElem& a, const GaussElem& b) { return a.combine(b, true); }
  friend GaussElem operator-(const GaussElem& a) { return GaussElem(a.val_, -a.poly_, a.precision_); }

  friend GaussElem operator*(const GaussElem& a, const GaussElem& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return GaussElem(a.val_, YPoly(a.ring()));
    auto la = a.value_lower_bound();
    auto lb = b.value_lower_bound();
    std::optional<GroupElem> p;
    if (a.precision_) p = *a.precision_ + *lb;
    if (b.precision_) {
      GroupElem q = *b.precision_ + *la;
      if (!p || q < *p) p = q;
    }
    if (!p) return GaussElem(a.val_, a.poly_ * b.poly_);
    GaussElem x = a.truncated(*p - *lb);
    GaussElem z = b.truncated(*p - *la);
    return GaussElem(a.val_, x.poly_ * z.poly_, p);
  }

  GaussElem pow(unsigned long n) const {
    GaussElem r(val_, YPoly::constant(SeriesElem::one(ring())));
    for (unsigned long i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Multiplicative inverse, truncated at `cutoff` (and at the propagated
  /// precision for truncated input). The leading part must be one monomial
  /// c*t^e*y^i; in rank-2 modes its whole y-slot must be that monomial.
  GaussElem inverse(const GroupElem& cutoff) const {
    if (!value_determined()) throw division_by_zero("inverse of an element whose value is undetermined");
    const GroupElem m_val = value();
    std::optional<std::pair<long, Rational>> lead;
    for (const auto& [i, c] : poly_.slots()) {
      if (c.terms().empty()) continue;
      const Rational& e = c.terms().begin()->first;
      if (!(val_->term_value(i, e) == m_val)) continue;
      if (lead) throw precondition_error("inverse: leading part is not a monomial");
      lead.emplace(i, e);
    }
    const auto& [li, le] = *lead;
    const FqElem lc = poly_.slots().at(li).terms().begin()->second;
    GaussElem m_inv(val_, YPoly::monomial(SeriesElem::monomial(ring(), lc.inverse(), -le), -li));

    GroupElem target = cutoff;
    if (precision_) {
      GroupElem t = *precision_ - Rational(2) * m_val;
      if (t < target) target = t;
    }
    const GroupElem rel = target + m_val;
    const GaussElem one = constant(val_, ring(), 1);
    const GaussElem two = constant(val_, ring(), 2);
    const GaussElem u = *this * m_inv;
    const auto h_low = (u - one).value_lower_bound();
    if (!h_low) return m_inv.truncated(target);
    if (!(*h_low > val_->zero()) || (*h_low)[0] <= 0)
      throw precondition_error("inverse: leading coefficient is not a single monomial");

    GaussElem y = one;
    GroupElem w = *h_low;
    while (w < rel) {
      GroupElem w2 = Rational(2) * w;
      w = w2 < rel ? w2 : rel;
      y = (y * (two - u.truncated(w) * y)).truncated(w).exact_part();
    }
    return (y.truncated(rel) * m_inv).truncated(target);
  }

  /// True when the difference is zero up to `cutoff`.
  bool agrees_with(const GaussElem& o, const GroupElem& cutoff) const {
    auto low = (*this - o).value_lower_bound();
    return !low || *low >= cutoff;
  }

  std::string to_string() const {
    std::string s = poly_.to_string();
    if (precision_) s += " + O(" + precision_->to_string() + ")";
    return s;
  }

 private:
  // Same terms with every precision dropped. Newton steps for inverses gain
  // precision that conservative propagation cannot see.
  GaussElem exact_part() const {
    YPoly::Slots slots;
    for (const auto& [i, c] : poly_.slots())
      slots.emplace(i, SeriesElem::from_terms(ring(), c.terms(), std::nullopt));
    return GaussElem(val_, YPoly::from_slots(ring(), std::move(slots)));
  }

  GaussElem combine(const GaussElem& b, bool subtract) const {
    std::optional<GroupElem> p = precision_;
    if (b.precision_ && (!p || *b.precision_ < *p)) p = b.precision_;
    return GaussElem(val_, subtract ? poly_ - b.poly_ : poly_ + b.poly_, p);
  }

  // Lowers the precision to what the coefficient precisions support, then
  // cuts every slot at the exponent matching the element precision.
  void normalize() {
    for (const auto& [i, c] : poly_.slots()) {
      if (!c.precision()) continue;
      GroupElem g = val_->term_value(i, *c.precision());
      if (!precision_ || g < *precision_) precision_ = g;
    }
    if (!precision_) return;
    const GroupElem& P = *precision_;
    YPoly::Slots kept;
    for (const auto& [i, c] : poly_.slots()) {
      GroupElem shift = Rational(i) * val_->y_value();
      std::optional<Rational> cut;
      if (val_->is_rank_one()) {
        cut = P[0] - shift[0];
      } else if (shift[0] > P[0]) {
        continue;
      } else if (shift[0] == P[0]) {
        cut = P[1] - shift[1];
      }
      SeriesElem x = cut ? c.truncated(*cut) : c;
      if (x.terms().empty()) continue;
      kept.emplace(i, std::move(x));
    }
    poly_ = YPoly::from_slots(poly_.ring(), std::move(kept));
  }

  ValRef val_;
  YPoly poly_;
  std::optional<GroupElem> precision_;
};

template <>
struct lift_traits<GaussElem> {
  static std::optional<GroupElem> value_lower_bound(const GaussElem& x) { return x.value_lower_bound(); }
  static bool value_determined(const GaussElem& x) { return x.value_determined(); }
  static GaussElem truncated(const GaussElem& x, const GroupElem& cutoff) { return x.truncated(cutoff); }
  static GaussElem inverse(const GaussElem& x, const GroupElem& cutoff) { return x.inverse(cutoff); }
  static GaussElem constant(const GaussElem& like, long c) {
    return GaussElem::constant(like.valuation(), like.ring(), c);
  }
  static std::size_t value_rank(const GaussElem& x) { return x.valuation()->rank(); }
};

/// Parses "1 + t*y + t^(3)*y^2" style polynomials: terms separated by + or -
/// at top level, each a product of series factors and powers of y.
inline YPoly parse_ypoly(const RingRef& ring, const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw parse_error("empty polynomial literal");
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::size_t start = 0;
  bool neg = false;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    char c = i < s.size() ? s[i] : '+';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw parse_error("unbalanced parentheses in '" + text + "'");
    bool sep = depth == 0 && (c == '+' || c == '-') && (i == s.size() || (i > 0 && s[i - 1] != '^'));
    if (!sep) continue;
    if (i > start) terms.emplace_back(neg, s.substr(start, i - start));
    else if (i != 0 && i < s.size()) throw parse_error("empty term in '" + text + "'");
    neg = c == '-';
    start = i + 1;
  }
  if (depth != 0) throw parse_error("unbalanced parentheses in '" + text + "'");
  YPoly out(ring);
  for (const auto& [negative, term] : terms) {
    SeriesElem coeff = SeriesElem::one(ring);
    long degree = 0;
    std::size_t pos = 0;
    depth = 0;
    for (std::size_t i = 0; i <= term.size(); ++i) {
      char c = i < term.size() ? term[i] : '*';
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!(c == '*' && depth == 0)) continue;
      std::string f = term.substr(pos, i - pos);
      pos = i + 1;
      if (f.empty()) throw parse_error("empty factor in '" + term + "'");
      if (f == "y") {
        degree += 1;
      } else if (f.rfind("y^", 0) == 0) {
        std::string k = f.substr(2);
        if (k.size() > 2 && k.front() == '(' && k.back() == ')') k = k.substr(1, k.size() - 2);
        Rational q = parse_rational(k);
        if (!is_integral(q)) throw parse_error("non-integral power of y in '" + f + "'");
        degree += q.get_num().get_si();
      } else {
        if (f.size() > 1 && f.front() == '(' && f.back() == ')') f = f.substr(1, f.size() - 2);
        coeff *= parse_series(ring, f);
      }
    }
    if (negative) coeff = -coeff;
    out = out + YPoly::monomial(coeff, degree);
  }
  return out;
}

}  // namespace ramify
