// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Expected values are computed here independently of
// the library wherever an independent computation exists.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "properties.hpp"
#include "ramify/runners.hpp"

using namespace ramify;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double limit_s, const std::function<Verdict()>& body) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.ok && secs >= limit_s) {
    v.ok = false;
    v.detail = "over time limit";
  }
  if (!v.ok) ++failures;
  std::printf("%s %s (%.2f s, limit %.0f s)%s%s\n", v.ok ? "PASS" : "FAIL", name.c_str(), secs, limit_s,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
}

const Claim* find(const std::vector<Claim>& claims, const std::string& id) {
  for (const auto& c : claims)
    if (c.claim_id == id) return &c;
  return nullptr;
}

const Claim* find(const Report& r, const std::string& id) { return find(r.claims, id); }

bool verified(const Report& r, const std::string& id) {
  const Claim* c = find(r, id);
  return c && c->status == Status::Verified;
}

RunConfig config(std::string runner) {
  RunConfig c;
  c.runner = std::move(runner);
  return c;
}

}  // namespace

int main() {
  const ValueGroup Z = ValueGroup::standard(1);

  criterion("1 lcm table, p = 7, eL, eF <= 12 with 7 not dividing eL*eF", 10, [&] {
    Verdict v;
    int cells = 0;
    for (long eL = 1; eL <= 12; ++eL)
      for (long eF = 1; eF <= 12; ++eF) {
        if ((eL * eF) % 7 == 0) continue;
        ++cells;
        auto r = verify_theorem2(eL, eF, 7);
        GroupIndex e = index(*r.observed_value_group, Z);
        std::string cell = "(" + std::to_string(eL) + "," + std::to_string(eF) + ")";
        v.require(e && *e == std::lcm(eL, eF), "index at " + cell + " is " + to_string(e));
        // The compositum is unramified over F exactly when its group is (1/eF)Z.
        bool unram = *r.observed_value_group == ValueGroup::cyclic(make_q(1, eF));
        v.require(unram == (eF % eL == 0), "unramified verdict at " + cell);
        v.require(r.all_verified(), "claims at " + cell);
      }
    v.require(cells == 121, "cell count " + std::to_string(cells));
    if (v.ok) v.detail = std::to_string(cells) + " qualifying cells";
    return v;
  });

  criterion("2 lattice identity on 100 seeded tame configurations", 10, [&] {
    Verdict v;
    auto r = verify_theorem3_lattice(1, 100, 7, 8, 12);
    v.require(r.claims.size() == 100, "config count");
    for (const auto& c : r.claims) v.require(c.status == Status::Verified, c.claim_id + ": observed " + c.observed);
    return v;
  });

  criterion("3 fractional subgroups, e <= 50", 5, [&] {
    Verdict v;
    for (const Rational& d : {make_q(1, 1), make_q(3, 7), make_q(1, 2), make_q(5, 1), make_q(2, 9)}) {
      ValueGroup D = ValueGroup::cyclic(d);
      for (long e = 1; e <= 50; ++e) {
        v.require(index(fractional(D, e), D) == GroupIndex(Integer(e)), "index at e=" + std::to_string(e));
        v.require(fractional(D, e) == ValueGroup::cyclic(d / e), "(1/e)D at e=" + std::to_string(e));
      }
    }
    auto r = verify_lemma17(50, 1);
    v.require(r.all_verified(), "randomized reconstruction");
    return v;
  });

  criterion("4 rank-2 refutation of the lcm formula, q in {2, 3, 5}", 1, [&] {
    Verdict v;
    for (long q : {2L, 3L, 5L}) {
      auto r = lemma18_witness(q, ValueGroup::standard(2), 7);
      for (const char* id : {"index(vK(a):vK)", "index(vK(a,b):vK(a))", "index(vK(a,b):vK(b))", "index(vK(b):vK)"}) {
        const Claim* c = find(r.claims, std::string(id) + "(q=" + std::to_string(q) + ")");
        v.require(c && c->observed == std::to_string(q), std::string(id) + " for q=" + std::to_string(q));
      }
      // Oracle: coset count of <(1/q,0),(0,1/q)> + Z^2 over Z^2.
      long brute = oracle::index_over_integers({{make_q(1, q), 0}, {0, make_q(1, q)}}, q);
      GroupIndex total = index(*r.observed_value_group, ValueGroup::standard(2));
      v.require(total && *total == brute && brute == q * q && brute > std::lcm(q, q), "total index for q=" + std::to_string(q));
      v.require(r.all_verified(), "claims for q=" + std::to_string(q));
    }
    return v;
  });

  criterion("5 Artin-Schreier defect example, p in {2, 3}, window p^-6", 5, [&] {
    Verdict v;
    for (long p : {2L, 3L}) {
      RunConfig c = config("example12");
      c.prime = p;
      c.n = 6;
      Report r = run(c);
      const std::string tag = " (p=" + std::to_string(p) + ")";
      v.require(verified(r, "theta-artin-schreier"), "(i)" + tag);
      const Claim* deg = find(r, "residue-degree-LF|F");
      v.require(deg && deg->status == Status::Verified && deg->observed == std::to_string(p), "(ii)" + tag);
      v.require(verified(r, "LF|F-value-group-unchanged"), "(iii)" + tag);
      const ExtensionDescriptor& d = r.descriptors.at(0);
      v.require(d.label == "L|K" && d.degree == p && d.ram_index == 1 && d.res_degree == 1 && d.defect() == p &&
                    !is_defectless(d),
                "(iv)" + tag);
      v.require(r.count(Status::Refuted) == 0, "refuted claim" + tag);
    }
    return v;
  });

  criterion("6 Kummer example, n in {2, 3, 4, 5}, p = 7", 5, [&] {
    Verdict v;
    for (long n : {2L, 3L, 4L, 5L}) {
      RunConfig c = config("example14");
      c.n = n;
      c.prime = 7;
      Report r = run(c);
      const std::string s = std::to_string(n);
      v.require(find(r, "e(L|K)") && find(r, "e(L|K)")->observed == s, "e(L|K) for n=" + s);
      v.require(find(r, "e(L.F|F)") && find(r, "e(L.F|F)")->observed == "1", "e(L.F|F) for n=" + s);
      v.require(find(r, "f(L.F|F)") && find(r, "f(L.F|F)")->observed == s, "f(L.F|F) for n=" + s);
      v.require(r.count(Status::Verified) == r.claims.size(), "all claims for n=" + s);
    }
    return v;
  });

  criterion("7 Newton lift of X^p - X - t, 5 steps", 1, [&] {
    Verdict v;
    auto F = FqField::make(2, 1);
    auto K = SeriesRing::make(F);
    std::vector<SeriesElem> poly{-parse_series(K, "t"), SeriesElem::constant(K, -1), SeriesElem::one(K)};
    auto prob = make_lift_problem(poly, F->zero(), Rational(32));
    auto trace = newton_trace(prob, 5);
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
      Rational need = std::min<Rational>(2 * (*trace[k].value)[0], 32);
      v.require((*trace[k + 1].value)[0] >= need, "step " + std::to_string(k));
    }
    SeriesElem z = hensel_lift(prob);
    // Oracle: the root is -(t + t^2 + t^4 + t^8 + t^16) in characteristic 2.
    oracle::Series expect;
    for (long e = 1; e < 32; e *= 2) expect[e] = 1;
    oracle::Series got;
    for (const auto& [e, c] : z.terms()) got[e] = c.coords()[0];
    v.require(got == expect, "root " + z.to_string());
    SeriesElem res = z * z - z - parse_series(K, "t");
    v.require(!res.value_lower_bound() || *res.value_lower_bound() >= 32, "residual");
    RunConfig c = config("example15");
    c.steps = 5;
    Report r = run(c);
    v.require(r.count(Status::Verified) == r.claims.size(), "runner claims");
    return v;
  });

  criterion("8 Gauss-valued root, (n, p, d) in {(2,5,t), (3,2,t), (5,3,t^2)}, plain and shifted", 5, [&] {
    Verdict v;
    struct Case {
      long n, p;
      const char* d;
    };
    for (const auto& cs : {Case{2, 5, "t"}, Case{3, 2, "t"}, Case{5, 3, "t^2"}}) {
      RunConfig c = config("example16");
      c.n = cs.n;
      c.prime = cs.p;
      c.d = cs.d;
      c.precision = Rational(32);
      c.mode = "plain,shifted";
      Report r = run(c);
      const std::string tag = " for (" + std::to_string(cs.n) + "," + std::to_string(cs.p) + "," + cs.d + ")";
      for (const char* mode : {"[plain]", "[shifted]"}) {
        v.require(verified(r, std::string("z*a = x") + mode), std::string("z*a = x") + mode + tag);
        v.require(verified(r, std::string("z^n = x^n/a^n") + mode), std::string("z^n") + mode + tag);
      }
      v.require(r.count(Status::Verified) == r.claims.size(), "all claims" + tag);
    }
    return v;
  });

  criterion("9 property suites, 1000 cases each", 30, [&] {
    Verdict v;
    std::string summary;
    for (const auto& o : props::all()) {
      v.require(o.ok() && o.cases == props::kCases, o.name + ": " + o.failure);
      summary += (summary.empty() ? "" : ", ") + o.name + " " + std::to_string(o.cases);
    }
    int descriptors = 0;
    for (const char* name : {"example12", "example14", "example15", "example16"}) {
      Report r = run(config(name));
      for (const auto& d : r.descriptors) {
        ++descriptors;
        v.require(fundamental_inequality_check(d), std::string(name) + " " + d.label);
      }
    }
    if (v.ok) v.detail = summary + "; " + std::to_string(descriptors) + " runner descriptors";
    return v;
  });

  criterion("10 p-bound instances and the p'-sum identity", 1, [&] {
    Verdict v;
    ValueGroup vL = ValueGroup::cyclic(make_q(1, 6));
    ValueGroup obs = ValueGroup::cyclic(make_q(1, 12));
    // Oracle: the 2'-part of (1/6)Z/Z is generated by 1/3.
    ValueGroup bound = compositum(p_prime_part(vL, Z, 2), Z);
    v.require(bound == ValueGroup::cyclic(make_q(1, 3)), "p-bound " + bound.to_string());
    v.require(index(obs, bound) == GroupIndex(Integer(4)), "quotient order");
    auto r = verify_theorem4(Z, vL, Z, 2, true, obs);
    v.require(r.all_verified(), "fixed instance claims");
    auto inst = p_bound_instances(2);
    int identities = 0;
    for (const auto& c : inst.claims) {
      v.require(c.status == Status::Verified, c.claim_id);
      identities += c.claim_id.rfind("p-prime-sum", 0) == 0;
    }
    v.require(identities > 0, "no instance flagged E_r = E");
    return v;
  });

  criterion("determinism: identical configs give byte-identical JSON", 30, [&] {
    Verdict v;
    for (const char* name : {"example12", "example14", "example15", "example16", "lemma17", "lemma18", "lcm-table"}) {
      RunConfig c = config(name);
      c.seed = 7;
      v.require(to_json(run(c)) == to_json(run(c)), name);
    }
    RunConfig s = config("sweeps");
    s.n = 4;
    s.e_max = 10;
    v.require(to_json(run(s)) == to_json(run(s)), "sweeps");
    return v;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
