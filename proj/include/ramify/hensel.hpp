#pragma once

// Newton iteration for simple residue roots over complete valued rings.
//
// The iteration is written once against lift_traits<E>; SeriesElem (rank-1
// values) is specialized here and the Gauss-valued completion elements of
// funcfield.hpp specialize it there.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramify/common.hpp"
#include "ramify/ordgroup.hpp"
#include "ramify/resfield.hpp"
#include "ramify/series.hpp"

namespace ramify {

template <class E>
struct lift_traits;

template <>
struct lift_traits<SeriesElem> {
  static std::optional<GroupElem> value_lower_bound(const SeriesElem& x) {
    auto v = x.value_lower_bound();
    if (!v) return std::nullopt;
    return GroupElem{*v};
  }
  static bool value_determined(const SeriesElem& x) { return !x.terms().empty(); }
  static SeriesElem truncated(const SeriesElem& x, const GroupElem& cutoff) { return x.truncated(cutoff[0]); }
  static SeriesElem inverse(const SeriesElem& x, const GroupElem& cutoff) { return x.inverse(cutoff[0]); }
  static SeriesElem constant(const SeriesElem& like, long c) { return SeriesElem::constant(like.ring(), c); }
  static std::size_t value_rank(const SeriesElem&) { return 1; }
};

/// A polynomial sum poly[i] X^i over a complete valued ring together with an
/// approximate root whose residue is a simple root of the reduced polynomial.
template <class E>
struct LiftProblem {
  std::vector<E> poly;
  E start;
  GroupElem target_precision;
};

/// One entry of a Newton trace: v(poly(z_k)), or a lower bound for it once
/// the value reaches the working precision. nullopt value means exact zero.
struct TraceStep {
  std::optional<GroupElem> value;
  bool lower_bound = false;

  std::string to_string() const {
    if (!value) return "inf";
    return (lower_bound ? ">=" : "") + value->to_string();
  }
};

enum class Convergence { Quadratic, Violated, Inconclusive };

/// Checks v(f(z_{k+1})) >= min(2 v(f(z_k)), work) along a trace, where `work`
/// is the working precision the trace was computed at. Without `work`, or
/// when a lower-bound entry is too small to certify the inequality, the
/// verdict is inconclusive instead of quadratic.
inline Convergence check_quadratic(const std::vector<TraceStep>& trace,
                                   const std::optional<GroupElem>& work = std::nullopt) {
  Convergence verdict = Convergence::Quadratic;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    const auto& prev = trace[k];
    const auto& next = trace[k + 1];
    if (!next.value) continue;
    if (!prev.value) return Convergence::Violated;  // exact zero cannot be followed by a nonzero residual
    GroupElem need = Rational(2) * *prev.value;
    if (work && *work < need) need = *work;
    if (*next.value >= need) continue;
    if (next.lower_bound || prev.lower_bound)
      verdict = Convergence::Inconclusive;
    else
      return Convergence::Violated;
  }
  return verdict;
}

template <class E>
struct LiftResult {
  E root;
  std::vector<TraceStep> trace;
};

namespace detail {

template <class E>
E evaluate(const std::vector<E>& poly, const E& z) {
  E acc = poly.back();
  for (std::size_t i = poly.size() - 1; i-- > 0;) acc = acc * z + poly[i];
  return acc;
}

template <class E>
std::vector<E> derivative(const std::vector<E>& poly) {
  using T = lift_traits<E>;
  std::vector<E> d;
  for (std::size_t i = 1; i < poly.size(); ++i) d.push_back(poly[i] * T::constant(poly[i], static_cast<long>(i)));
  if (d.empty()) d.push_back(T::constant(poly[0], 0));
  return d;
}

template <class E>
TraceStep trace_entry(const E& r, const GroupElem& work) {
  using T = lift_traits<E>;
  auto low = T::value_lower_bound(r);
  if (!low) return {std::nullopt, false};
  if (T::value_determined(r)) return {*low, false};
  return {std::min(*low, work), true};
}

template <class E>
bool reached(const E& r, const GroupElem& work) {
  using T = lift_traits<E>;
  auto low = T::value_lower_bound(r);
  return !low || *low >= work;
}

template <class E>
void check_problem(const LiftProblem<E>& prob) {
  using T = lift_traits<E>;
  if (prob.poly.size() < 2) throw precondition_error("lift: polynomial of degree < 1");
  const GroupElem zero(T::value_rank(prob.start));
  for (const auto& c : prob.poly) {
    auto low = T::value_lower_bound(c);
    if (low && *low < zero) throw precondition_error("lift: coefficient of negative value");
  }
  E f0 = evaluate(prob.poly, prob.start);
  auto v0 = T::value_lower_bound(f0);
  if (v0 && !(*v0 > zero)) throw precondition_error("lift: start is not a residue root");
  E d0 = evaluate(derivative(prob.poly), prob.start);
  auto vd = T::value_lower_bound(d0);
  if (!vd || !T::value_determined(d0) || !(*vd == zero))
    throw precondition_error("lift: residue root is not simple (derivative residue vanishes)");
}

template <class E>
E newton_step(const std::vector<E>& deriv, const E& z, const E& r,
              const GroupElem& work) {
  using T = lift_traits<E>;
  E d = evaluate(deriv, z);
  E step = r * T::inverse(d, work);
  return T::truncated(z - step, work);
}

}  // namespace detail

/// Runs exactly `steps` Newton iterations at working precision
/// prob.target_precision and returns v(poly(z_k)) for k = 0..steps.
template <class E>
std::vector<TraceStep> newton_trace(const LiftProblem<E>& prob, int steps) {
  using T = lift_traits<E>;
  detail::check_problem(prob);
  const GroupElem& work = prob.target_precision;
  const auto deriv = detail::derivative(prob.poly);
  E z = prob.start;
  std::vector<TraceStep> trace;
  for (int k = 0;; ++k) {
    E r = T::truncated(detail::evaluate(prob.poly, z), work);
    trace.push_back(detail::trace_entry(r, work));
    if (k == steps) break;
    if (!detail::reached(r, work)) z = detail::newton_step(deriv, z, r, work);
  }
  return trace;
}

/// Newton iteration from the start root until v(poly(z)) >= target. Returns
/// z truncated at the target together with the trace of residual values.
template <class E>
LiftResult<E> hensel_lift_traced(const LiftProblem<E>& prob, int max_steps = 64) {
  using T = lift_traits<E>;
  detail::check_problem(prob);
  const GroupElem& work = prob.target_precision;
  const auto deriv = detail::derivative(prob.poly);
  E z = prob.start;
  std::vector<TraceStep> trace;
  for (int k = 0; k <= max_steps; ++k) {
    E r = T::truncated(detail::evaluate(prob.poly, z), work);
    trace.push_back(detail::trace_entry(r, work));
    if (detail::reached(r, work)) return {T::truncated(z, work), std::move(trace)};
    z = detail::newton_step(deriv, z, r, work);
  }
  throw error("internal: Newton iteration did not reach precision " + work.to_string());
}

template <class E>
E hensel_lift(const LiftProblem<E>& prob) {
  return hensel_lift_traced(prob).root;
}

/// Series lift problem from a residue root given in the coefficient field.
inline LiftProblem<SeriesElem> make_lift_problem(std::vector<SeriesElem> poly, const FqElem& start,
                                                 const Rational& target) {
  if (poly.empty()) throw precondition_error("lift: empty polynomial");
  SeriesElem z0 = SeriesElem::constant(poly.front().ring(), start);
  return {std::move(poly), std::move(z0), GroupElem{target}};
}

/// X^n - c as a coefficient list.
inline std::vector<SeriesElem> binomial_poly(const SeriesElem& c, long n) {
  std::vector<SeriesElem> poly(n + 1, SeriesElem::zero(c.ring()));
  poly[0] = -c;
  poly[n] = SeriesElem::one(c.ring());
  return poly;
}

/// An n-th root b of c with v(b) = beta, for p not dividing n: lifts a root
/// of X^n - c*t^(-n*beta) from a residue root and multiplies back by t^beta.
/// Without an explicit `start` the residue root 1 is used when the reduced
/// constant is 1; otherwise the caller must pick one.
inline SeriesElem nth_root_split(const SeriesElem& c, long n, const Rational& beta,
                                 std::optional<FqElem> start = std::nullopt,
                                 std::optional<Rational> target = std::nullopt) {
  const RingRef& ring = c.ring();
  const long p = ring->characteristic();
  if (n < 1) throw precondition_error("nth_root_split: n must be positive");
  if (n % p == 0)
    throw precondition_error("nth_root_split: residue characteristic " + std::to_string(p) + " divides n = " +
                             std::to_string(n));
  auto vc = c.valuation();
  if (!vc) throw precondition_error("nth_root_split: c = 0");
  if (*vc != beta * n)
    throw precondition_error("nth_root_split: n*beta = " + Rational(beta * n).get_str() + " but v(c) = " +
                             vc->get_str());
  ring->check_exponent(beta);
  SeriesElem u = c.shifted(-beta * n);
  FqElem r = u.residue();
  std::vector<FqElem> res_poly(n + 1, ring->field()->zero());
  res_poly[0] = -r;
  res_poly[n] = ring->field()->one();
  FqElem s;
  if (start) {
    if (!(start->pow(Integer(n)) == r))
      throw precondition_error("nth_root_split: start is not an n-th root of the residue " + r.to_string());
    s = *start;
  } else if (r.is_one()) {
    s = ring->field()->one();
  } else {
    auto roots = roots_in_field(res_poly);
    if (roots.empty())
      throw no_residue_root("X^" + std::to_string(n) + " - " + r.to_string() +
                            " has no root in the coefficient field; extend it first");
    throw precondition_error("nth_root_split: residue constant " + r.to_string() +
                             " is not 1; an explicit start root is required");
  }
  Rational rel = target ? *target - beta : (u.precision() ? *u.precision() : ring->default_precision());
  SeriesElem w = hensel_lift(make_lift_problem(binomial_poly(u, n), s, rel));
  return w.shifted(beta);
}

}  // namespace ramify
