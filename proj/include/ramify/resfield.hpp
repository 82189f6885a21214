#pragma once

// Finite fields F_p and F_{p^k}: the residue fields of every construction in
// this library. Finite fields are perfect, so the separable part of a residue
// extension is always the whole extension here.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ramify/common.hpp"

namespace ramify {

namespace fp {

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
using Poly = std::vector<long>;

inline long mod(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline long inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = mod(a, p);
  if (nr == 0) throw division_by_zero("inverse of 0 in F_" + std::to_string(p));
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return mod(t, p);
}

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly sub(Poly a, const Poly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim(c);
  return c;
}

inline Poly rem(Poly a, const Poly& m, long p) {
  trim(a);
  const int dm = degree(m);
  const long lead_inv = inv(m.back(), p);
  while (degree(a) >= dm) {
    long q = a.back() * lead_inv % p;
    int shift = degree(a) - dm;
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - q * m[i], p);
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long li = inv(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

// x^(p^i) mod m by repeated p-th powering.
inline Poly frobenius_power_of_x(const Poly& m, long p, int i) {
  Poly x = rem(Poly{0, 1}, m, p);
  for (int step = 0; step < i; ++step) {
    Poly result{1};
    Poly base = x;
    long e = p;
    while (e > 0) {
      if (e & 1) result = rem(mul(result, base, p), m, p);
      base = rem(mul(base, base, p), m, p);
      e >>= 1;
    }
    x = result;
  }
  return x;
}

/// Ben-Or: f of degree k is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2.
inline bool is_irreducible(const Poly& f, long p) {
  const int k = degree(f);
  if (k < 1) return false;
  if (k == 1) return true;
  for (int i = 1; i <= k / 2; ++i) {
    Poly xi = frobenius_power_of_x(f, p, i);
    Poly g = gcd(f, sub(xi, Poly{0, 1}, p), p);
    if (degree(g) > 0) return false;
  }
  return true;
}

}  // namespace fp

class FqElem;
class FqField;
using FieldRef = std::shared_ptr<const FqField>;

class FqField : public std::enable_shared_from_this<FqField> {
 public:
  /// F_{p^k} with a tabulated Conway polynomial when available, otherwise the
  /// lexicographically first monic irreducible polynomial of degree k.
  static FieldRef make(long p, int k) {
    if (!is_prime(p)) throw precondition_error("F_q needs a prime characteristic, got " + std::to_string(p));
    if (k < 1) throw precondition_error("F_q extension degree must be positive");
    if (auto m = conway(p, k)) return with_modulus(p, *m);
    return with_modulus(p, first_irreducible(p, k));
  }

  /// F_p[X]/(modulus); modulus is monic, low-to-high, and must be irreducible.
  static FieldRef with_modulus(long p, fp::Poly modulus) {
    if (!is_prime(p)) throw precondition_error("F_q needs a prime characteristic, got " + std::to_string(p));
    for (auto& c : modulus) c = fp::mod(c, p);
    fp::trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1)
      throw precondition_error("F_q modulus must be monic of positive degree");
    if (!fp::is_irreducible(modulus, p)) throw precondition_error("F_q modulus is reducible over F_p");
    return FieldRef(new FqField(p, std::move(modulus)));
  }

  long characteristic() const { return p_; }
  int degree() const { return fp::degree(modulus_); }
  const fp::Poly& modulus() const { return modulus_; }
  Integer order() const { return ipow(Integer(p_), static_cast<unsigned long>(degree())); }

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(long c) const;
  /// The class of X, printed as `g`.
  FqElem generator() const;
  FqElem from_coords(std::vector<long> coords) const;

  friend bool operator==(const FqField& a, const FqField& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  FqField(long p, fp::Poly modulus) : p_(p), modulus_(std::move(modulus)) {}

  static std::optional<fp::Poly> conway(long p, int k) {
    static const std::map<std::pair<long, int>, fp::Poly> table = {
        {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}}, {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}}, {{3, 5}, {1, 2, 0, 0, 0, 1}}, {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{5, 1}, {3, 1}},          {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}}, {{7, 1}, {4, 1}},          {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
    };
    auto it = table.find({p, k});
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  static fp::Poly first_irreducible(long p, int k) {
    fp::Poly f(k + 1, 0);
    f[k] = 1;
    while (true) {
      if (f[0] != 0 && fp::is_irreducible(f, p)) return f;
      int i = 0;
      while (i < k) {
        if (++f[i] < p) break;
        f[i] = 0;
        ++i;
      }
      if (i == k) throw error("no irreducible polynomial found");  // unreachable
    }
  }

  long p_;
  fp::Poly modulus_;
};

class FqElem {
 public:
  FqElem() = default;
  FqElem(FieldRef field, std::vector<long> coords) : field_(std::move(field)), c_(std::move(coords)) {
    const int k = field_->degree();
    for (auto& x : c_) x = fp::mod(x, p());
    if (static_cast<int>(c_.size()) > k) c_ = fp::rem(std::move(c_), field_->modulus(), p());
    c_.resize(k, 0);
  }

  const FieldRef& field() const { return field_; }
  const std::vector<long>& coords() const { return c_; }
  long p() const { return field_->characteristic(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](long x) { return x == 0; });
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](long x) { return x == 0; });
  }
  /// Whether the element lies in the prime field F_p.
  bool in_prime_field() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](long x) { return x == 0; });
  }

  FqElem& operator+=(const FqElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % p();
    return *this;
  }
  FqElem& operator-=(const FqElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = fp::mod(c_[i] - o.c_[i], p());
    return *this;
  }
  FqElem& operator*=(const FqElem& o) {
    check(o);
    fp::Poly prod = fp::mul(trimmed(), o.trimmed(), p());
    *this = FqElem(field_, fp::rem(std::move(prod), field_->modulus(), p()));
    return *this;
  }
  FqElem& operator/=(const FqElem& o) { return *this *= o.inverse(); }

  friend FqElem operator+(FqElem a, const FqElem& b) { return a += b; }
  friend FqElem operator-(FqElem a, const FqElem& b) { return a -= b; }
  friend FqElem operator*(FqElem a, const FqElem& b) { return a *= b; }
  friend FqElem operator/(FqElem a, const FqElem& b) { return a /= b; }
  friend FqElem operator-(FqElem a) {
    for (auto& x : a.c_) x = fp::mod(-x, a.p());
    return a;
  }

  friend bool operator==(const FqElem& a, const FqElem& b) {
    a.check(b);
    return a.c_ == b.c_;
  }

  FqElem pow(Integer e) const {
    if (e < 0) return inverse().pow(-e);
    FqElem result = field_->one();
    FqElem base = *this;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  FqElem inverse() const {
    if (is_zero()) throw division_by_zero("inverse of zero in F_q");
    // Extended Euclid against the modulus.
    const long P = p();
    fp::Poly r0 = field_->modulus(), r1 = trimmed();
    fp::Poly s0{}, s1{1};
    while (fp::degree(r1) > 0) {
      fp::Poly q;
      fp::Poly r = r0;
      q.assign(std::max(0, fp::degree(r0) - fp::degree(r1) + 1), 0);
      long li = fp::inv(r1.back(), P);
      while (fp::degree(r) >= fp::degree(r1)) {
        long c = r.back() * li % P;
        int sh = fp::degree(r) - fp::degree(r1);
        q[sh] = c;
        for (int i = 0; i <= fp::degree(r1); ++i) r[sh + i] = fp::mod(r[sh + i] - c * r1[i], P);
        fp::trim(r);
      }
      fp::trim(q);
      fp::Poly s = fp::sub(s0, fp::mul(q, s1, P), P);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    long ci = fp::inv(r1[0], P);
    for (auto& x : s1) x = x * ci % P;
    return FqElem(field_, fp::rem(s1, field_->modulus(), P));
  }

  FqElem frobenius() const { return pow(Integer(p())); }

  /// Polynomial in the generator `g`, highest power first: "2*g^2 + g + 1".
  std::string to_string() const {
    std::string s;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
      long c = c_[i];
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0) {
        s += std::to_string(c);
        continue;
      }
      if (c != 1) s += std::to_string(c) + "*";
      s += "g";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  fp::Poly trimmed() const {
    fp::Poly t = c_;
    fp::trim(t);
    return t;
  }
  void check(const FqElem& o) const {
    if (field_ != o.field_ && !(*field_ == *o.field_)) throw field_mismatch("F_q elements from different fields");
  }

  FieldRef field_;
  std::vector<long> c_;
};

inline FqElem FqField::zero() const { return FqElem(shared_from_this(), {}); }
inline FqElem FqField::one() const { return FqElem(shared_from_this(), {1}); }
inline FqElem FqField::from_int(long c) const { return FqElem(shared_from_this(), {c}); }
inline FqElem FqField::generator() const { return FqElem(shared_from_this(), {0, 1}); }
inline FqElem FqField::from_coords(std::vector<long> coords) const {
  return FqElem(shared_from_this(), std::move(coords));
}

/// Every element of the field, in coordinate order. Raises above `cap`.
inline std::vector<FqElem> all_elements(const FieldRef& F, long cap = 531441) {
  if (F->order() > cap)
    throw precondition_error("field of order " + F->order().get_str() + " exceeds enumeration cap " +
                             std::to_string(cap));
  const long q = F->order().get_si();
  const int k = F->degree();
  const long p = F->characteristic();
  std::vector<FqElem> out;
  out.reserve(q);
  std::vector<long> c(k, 0);
  for (long n = 0; n < q; ++n) {
    long m = n;
    for (int i = 0; i < k; ++i) {
      c[i] = m % p;
      m /= p;
    }
    out.push_back(F->from_coords(c));
  }
  return out;
}

/// Dimension over F_p of the span of the given elements (Gaussian elimination
/// on coordinate vectors).
inline int span_dimension(const std::vector<FqElem>& elems) {
  if (elems.empty()) return 0;
  const long p = elems.front().p();
  std::vector<std::vector<long>> rows;
  for (const auto& e : elems) rows.push_back(e.coords());
  const std::size_t k = rows.front().size();
  int rank = 0;
  for (std::size_t col = 0; col < k && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    long li = fp::inv(rows[rank][col], p);
    for (auto& x : rows[rank]) x = x * li % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == rank || rows[i][col] == 0) continue;
      long f = rows[i][col];
      for (std::size_t j = 0; j < k; ++j) rows[i][j] = fp::mod(rows[i][j] - f * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

/// Degree of the minimal polynomial of a over the subfield F_{p^s}, where s
/// divides the degree of a's field. The degree over F_p is the dimension of
/// span{1, a, a^2, ...}; over F_{p^s} it is that degree divided by its gcd with s.
inline int min_poly_degree(const FqElem& a, int over_sub_k = 1) {
  const int k = a.field()->degree();
  if (over_sub_k < 1 || k % over_sub_k != 0)
    throw precondition_error("min_poly_degree: " + std::to_string(over_sub_k) + " does not divide " +
                             std::to_string(k));
  std::vector<FqElem> powers{a.field()->one()};
  for (int i = 1; i < k; ++i) powers.push_back(powers.back() * a);
  const int d = span_dimension(powers);
  return d / static_cast<int>(gcd(Integer(d), Integer(over_sub_k)).get_si());
}

/// Roots of sum coeffs[i] X^i in the coefficient field, by exhaustive search.
inline std::vector<FqElem> roots_in_field(const std::vector<FqElem>& coeffs, long cap = 531441) {
  if (coeffs.empty()) throw precondition_error("roots of the zero polynomial");
  std::vector<FqElem> roots;
  for (const auto& x : all_elements(coeffs.front().field(), cap)) {
    FqElem acc = x.field()->zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

/// 1 if X^p - X - c has a root in the field of c, else p.
inline int artin_schreier_residue_degree(const FqElem& c, long cap = 531441) {
  const FieldRef& F = c.field();
  const long p = F->characteristic();
  for (const auto& x : all_elements(F, cap))
    if (x.pow(Integer(p)) - x == c) return 1;
  return static_cast<int>(p);
}

/// Multiplicative order of a nonzero element.
inline Integer multiplicative_order(const FqElem& a) {
  if (a.is_zero()) throw precondition_error("order of zero");
  Integer n = a.field()->order() - 1;
  Integer ord = n;
  // Strip prime factors of q - 1 while the power stays 1.
  Integer m = n;
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    while (m % d == 0) m /= d;
    while (ord % d == 0 && a.pow(ord / d).is_one()) ord /= d;
  }
  if (m > 1)
    while (ord % m == 0 && a.pow(ord / m).is_one()) ord /= m;
  return ord;
}

/// A primitive n-th root of unity in F, if one exists (n | q - 1).
inline std::optional<FqElem> primitive_root_of_unity(const FieldRef& F, long n) {
  if (n < 1) throw precondition_error("root of unity order must be positive");
  Integer q1 = F->order() - 1;
  if (q1 % n != 0) return std::nullopt;
  for (const auto& x : all_elements(F)) {
    if (x.is_zero()) continue;
    if (multiplicative_order(x) == q1) return x.pow(q1 / n);
  }
  return std::nullopt;
}

/// Parses polynomials in `g` such as "2*g^2 + g + 1" or "3".
inline FqElem parse_fq(const FieldRef& F, const std::string& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> long {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw parse_error("expected a number in '" + text + "'");
    return std::stol(text.substr(start, i - start));
  };
  std::vector<std::pair<long, long>> terms;  // (coeff, power)
  int sign = 1;
  skip();
  if (i < text.size() && text[i] == '-') {
    sign = -1;
    ++i;
  }
  while (true) {
    skip();
    long coeff = 1;
    long power = 0;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = number();
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        if (i >= text.size() || text[i] != 'g') throw parse_error("expected 'g' in '" + text + "'");
      }
    }
    if (i < text.size() && text[i] == 'g') {
      ++i;
      power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        power = number();
      }
    }
    terms.emplace_back(sign * coeff, power);
    skip();
    if (i >= text.size()) break;
    if (text[i] == '+')
      sign = 1;
    else if (text[i] == '-')
      sign = -1;
    else
      throw parse_error("unexpected character '" + std::string(1, text[i]) + "' in '" + text + "'");
    ++i;
  }
  FqElem result = F->zero();
  for (auto [c, pw] : terms) result += F->from_int(c) * F->generator().pow(Integer(pw));
  return result;
}

}  // namespace ramify
