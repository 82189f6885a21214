#include <gtest/gtest.h>

#include <vector>

#include "ramify/funcfield.hpp"

using namespace ramify;

namespace {

struct Fixture {
  FieldRef F = FqField::make(5, 1);
  RingRef K = SeriesRing::make(F, ExponentDomain::puiseux(6));
  YPoly poly(const std::string& s) { return parse_ypoly(K, s); }
  SeriesElem ser(const std::string& s) { return parse_series(K, s); }
};

// Direct formula: minimum over stored terms of embed(e) + i * y_value.
GroupElem min_term_value(const std::vector<std::pair<long, Rational>>& terms, const GaussValuation& v) {
  GroupElem best = v.term_value(terms[0].first, terms[0].second);
  for (const auto& [i, e] : terms) best = std::min(best, v.term_value(i, e));
  return best;
}

}  // namespace

TEST(FuncField, GaussValueModes) {
  Fixture f;
  YPoly g = f.poly("1 + t*y + t^3*y^2");
  EXPECT_EQ(gauss_value(g, GaussValuation::plain()), GroupElem{Rational(0)});
  EXPECT_EQ(gauss_value(g, GaussValuation::shifted(2)), GroupElem{Rational(0)});
  EXPECT_EQ(gauss_value(g, GaussValuation::shifted(-2)), GroupElem{Rational(-1)});
  EXPECT_EQ(gauss_value(f.poly("t*y^2"), GaussValuation::composed_y_adic()), (GroupElem{Rational(2), Rational(1)}));
  std::vector<std::pair<long, Rational>> terms{{0, 0}, {1, 1}, {2, 3}};
  for (Rational d : {Rational(2), make_q(-1, 2), make_q(1, 3)})
    EXPECT_EQ(gauss_value(g, GaussValuation::shifted(d)), min_term_value(terms, GaussValuation::shifted(d)));
  auto vt = GaussValuation::value_transcendental(GroupElem{Rational(1), make_q(1, 2)});
  EXPECT_EQ(gauss_value(g, vt), min_term_value(terms, vt));
}

TEST(FuncField, RatValue) {
  Fixture f;
  RatFunc inv_y(f.poly("1"), f.poly("y"));
  EXPECT_EQ(rat_value(inv_y, GaussValuation::composed_y_adic()), (GroupElem{Rational(-1), Rational(0)}));
  // v(t + y) = min(1, 0) = 0 and v(t) = 1.
  RatFunc r(f.poly("t + y"), f.poly("t"));
  EXPECT_EQ(rat_value(r, GaussValuation::plain()), GroupElem{Rational(-1)});
  RatFunc r2(f.poly("t + t*y"), f.poly("t"));
  EXPECT_EQ(rat_value(r2, GaussValuation::plain()), GroupElem{Rational(0)});
  // x/a with x = a + d*y, v(d) > v(a).
  RatFunc xa(f.poly("t^(1/2) + t*y"), f.poly("t^(1/2)"));
  EXPECT_EQ(rat_value(xa, GaussValuation::plain()), GroupElem{Rational(0)});
  EXPECT_THROW(RatFunc(f.poly("1"), YPoly(f.K)), division_by_zero);
}

TEST(FuncField, Residues) {
  Fixture f;
  auto plain = GaussValuation::plain();
  auto ry = residue_of_unit(RatFunc(f.poly("y")), plain);
  EXPECT_EQ(ry.to_string(), "yv");
  auto r1 = residue_of_unit(RatFunc(f.poly("1 + t*y")), plain);
  EXPECT_TRUE(r1.is_constant());
  EXPECT_TRUE(r1.constant_value().is_one());
  auto rxa = residue_of_unit(RatFunc(f.poly("t^(1/2) + t*y"), f.poly("t^(1/2)")), plain);
  EXPECT_TRUE(rxa.is_constant() && rxa.constant_value().is_one());
  auto q = residue_of_unit(RatFunc(f.poly("y + 1 + t"), f.poly("y^2 - 1")), plain);
  EXPECT_EQ(q.to_string(), "(1)/(yv + 4)");
  auto sh = residue_of_unit(RatFunc(f.poly("t^2*y"), f.poly("t^4")), GaussValuation::shifted(2));
  EXPECT_EQ(sh.to_string(), "(y/t^(2))v");
  EXPECT_THROW(residue_of_unit(RatFunc(f.poly("t")), plain), precondition_error);
}

TEST(FuncField, ValueGroups) {
  ValueGroup Z = ValueGroup::standard(1);
  EXPECT_EQ(GaussValuation::plain().value_group(Z), Z);
  EXPECT_EQ(GaussValuation::shifted(make_q(1, 3)).value_group(Z), ValueGroup::cyclic(make_q(1, 3)));
  EXPECT_EQ(GaussValuation::composed_y_adic().value_group(Z), ValueGroup::standard(2));
  EXPECT_THROW(GaussValuation::value_transcendental(GroupElem{Rational(0), Rational(1)}), precondition_error);
}

TEST(FuncField, GaussElemInverse) {
  Fixture f;
  for (ValRef v : {share(GaussValuation::plain()), share(GaussValuation::shifted(make_q(1, 2))),
                   share(GaussValuation::composed_y_adic()),
                   share(GaussValuation::value_transcendental(GroupElem{Rational(1), make_q(1, 3)}))}) {
    GaussElem x(v, f.poly("1 + t*y"));
    const GroupElem cut = v->is_rank_one() ? GroupElem{Rational(12)} : GroupElem{Rational(12), Rational(0)};
    GaussElem y = x.inverse(cut);
    GaussElem one = GaussElem::constant(v, f.K, 1);
    EXPECT_TRUE((x * y).agrees_with(one, cut)) << v->name();
  }
}

TEST(FuncField, GaussElemArithmeticMatchesPolynomials) {
  Fixture f;
  ValRef v = share(GaussValuation::plain());
  YPoly a = f.poly("1 + t*y");
  YPoly b = f.poly("2 + t^(1/2)*y^2");
  GaussElem ga(v, a), gb(v, b);
  EXPECT_EQ((ga * gb).poly().to_string(), (a * b).to_string());
  EXPECT_EQ((ga + gb).poly().to_string(), (a + b).to_string());
  EXPECT_EQ(ga.pow(3).poly().to_string(), a.pow(3).to_string());
}

TEST(FuncField, UndeterminedValue) {
  Fixture f;
  YPoly p = YPoly::constant(f.ser("O(t^2)")) + f.poly("t^3*y");
  EXPECT_THROW(gauss_value(p, GaussValuation::plain()), undetermined_value);
  YPoly q = YPoly::constant(f.ser("O(t^5)")) + f.poly("t*y");
  EXPECT_EQ(gauss_value(q, GaussValuation::plain()), GroupElem{Rational(1)});
}
