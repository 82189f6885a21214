#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ramify {

using Integer = mpz_class;
using Rational = mpq_class;

// Error hierarchy. Every failure raised by the library derives from `error`
// so callers (the CLI in particular) can map it onto an exit status.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct dimension_mismatch : error {
  using error::error;
};
struct precondition_error : error {
  using error::error;
};
struct division_by_zero : error {
  using error::error;
};
struct field_mismatch : error {
  using error::error;
};
/// Raised when a truncated element is zero up to its precision, so its value
/// is not known.
struct undetermined_value : error {
  using error::error;
};
/// Raised when a residue polynomial has no root in the coefficient field.
struct no_residue_root : error {
  using error::error;
};
struct parse_error : error {
  using error::error;
};

inline Rational make_q(long num, long den = 1) {
  if (den == 0) throw division_by_zero("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_q(const Integer& num, const Integer& den) {
  if (den == 0) throw division_by_zero("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return lcm(Integer(static_cast<long>(a)), Integer(static_cast<long>(b))).get_si();
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Multiplicity of the prime p in n (n != 0).
inline unsigned long valuation_at(Integer n, const Integer& p) {
  if (n == 0) throw precondition_error("p-adic valuation of zero");
  unsigned long k = 0;
  if (n < 0) n = -n;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

/// n with every factor of p removed.
inline Integer strip_prime(Integer n, const Integer& p) {
  if (n == 0) return n;
  while (n % p == 0) n /= p;
  return n;
}

inline bool is_power_of(Integer n, const Integer& p) {
  if (n <= 0) return false;
  return strip_prime(std::move(n), p) == 1;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "3", "-2/7", "1/729". Whitespace is not accepted.
inline Rational parse_rational(std::string_view s) {
  if (s.empty()) throw parse_error("empty rational literal");
  std::string buf(s);
  for (std::size_t i = 0; i < buf.size(); ++i) {
    char c = buf[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0) ||
              (c == '+' && i == 0);
    if (!ok) throw parse_error("malformed rational literal '" + buf + "'");
  }
  if (buf[0] == '+') buf.erase(0, 1);
  Rational q;
  if (q.set_str(buf, 10) != 0) throw parse_error("malformed rational literal '" + buf + "'");
  if (q.get_den() == 0) throw division_by_zero("zero denominator in '" + buf + "'");
  q.canonicalize();
  return q;
}

}  // namespace ramify
