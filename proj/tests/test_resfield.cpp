#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ramify/resfield.hpp"

using namespace ramify;

TEST(ResField, PrimeFieldArithmetic) {
  auto F3 = FqField::make(3, 1);
  EXPECT_EQ(F3->from_int(2) + F3->from_int(2), F3->one());
  for (const auto& x : all_elements(F3)) {
    if (!x.is_zero()) {
      EXPECT_TRUE((x * x.inverse()).is_one());
    }
  }
  EXPECT_THROW(F3->zero().inverse(), division_by_zero);
}

TEST(ResField, ProductsMatchNaivePolynomialProduct) {
  for (auto [p, k] : {std::pair{2L, 3}, std::pair{3L, 2}, std::pair{5L, 2}}) {
    auto F = FqField::make(p, k);
    auto elems = all_elements(F);
    for (std::size_t i = 0; i < elems.size(); i += 3)
      for (std::size_t j = 0; j < elems.size(); j += 5) {
        oracle::Poly expect = oracle::polymulmod(elems[i].coords(), elems[j].coords(), F->modulus(), p);
        EXPECT_EQ((elems[i] * elems[j]).coords(), expect);
      }
  }
}

TEST(ResField, FrobeniusFixesEveryElement) {
  auto F = FqField::make(3, 2);
  for (const auto& x : all_elements(F)) EXPECT_EQ(x.pow(F->order()), x);
  EXPECT_EQ(F->order(), 9);
}

TEST(ResField, ModulusValidation) {
  EXPECT_THROW(FqField::with_modulus(2, {1, 0, 1}), precondition_error);  // (X+1)^2
  EXPECT_THROW(FqField::make(4, 1), precondition_error);
  EXPECT_NO_THROW(FqField::with_modulus(2, {1, 1, 1}));
}

TEST(ResField, MinPolyDegree) {
  auto F3 = FqField::make(3, 1);
  EXPECT_EQ(min_poly_degree(F3->from_int(2)), 1);
  auto F9 = FqField::make(3, 2);
  for (const auto& x : all_elements(F9))
    EXPECT_EQ(min_poly_degree(x), oracle::frobenius_orbit(x.coords(), F9->modulus(), 3)) << x.to_string();
  for (long p : {2L, 3L, 5L}) {
    oracle::Poly m(p + 1, 0);
    m[0] = p - 1;
    m[1] = p - 1;
    m[p] = 1;
    auto F = FqField::with_modulus(p, m);
    FqElem a = F->generator();
    EXPECT_TRUE((a.pow(Integer(p)) - a - F->one()).is_zero());
    EXPECT_EQ(min_poly_degree(a), p);
    EXPECT_EQ(oracle::frobenius_orbit(a.coords(), m, p), p);
  }
  auto F16 = FqField::make(2, 4);
  FqElem b = F16->generator().pow(Integer(5));  // generates F_4 inside F_16
  EXPECT_EQ(min_poly_degree(b), 2);
  EXPECT_EQ(min_poly_degree(b, 2), 1);
}

TEST(ResField, ArtinSchreierResidueDegree) {
  for (long p : {2L, 3L, 5L, 7L}) {
    auto F = FqField::make(p, 1);
    EXPECT_EQ(artin_schreier_residue_degree(F->zero()), 1);
    EXPECT_EQ(artin_schreier_residue_degree(F->one()), p);
  }
  auto F9 = FqField::make(3, 2);
  FqElem r = F9->generator();
  EXPECT_EQ(artin_schreier_residue_degree(r.pow(Integer(3)) - r), 1);
}

TEST(ResField, RootsOfUnity) {
  auto F7 = FqField::make(7, 1);
  for (long n : {1L, 2L, 3L, 6L}) {
    auto z = primitive_root_of_unity(F7, n);
    ASSERT_TRUE(z);
    EXPECT_EQ(multiplicative_order(*z), n);
    // Oracle: smallest m with z^m = 1 by direct iteration.
    FqElem acc = *z;
    long m = 1;
    while (!acc.is_one()) acc *= *z, ++m;
    EXPECT_EQ(m, n);
  }
  EXPECT_FALSE(primitive_root_of_unity(F7, 4));
  auto F49 = FqField::make(7, 2);
  EXPECT_TRUE(primitive_root_of_unity(F49, 4));
}

TEST(ResField, RootsInField) {
  auto F5 = FqField::make(5, 1);
  // X^2 - 4 has roots 2, 3.
  auto roots = roots_in_field({F5->from_int(-4), F5->zero(), F5->one()});
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0] * roots[0], F5->from_int(4));
  EXPECT_TRUE(roots_in_field({F5->from_int(-2), F5->zero(), F5->one()}).empty());
}

TEST(ResField, ParseAndPrint) {
  auto F9 = FqField::make(3, 2);
  FqElem x = parse_fq(F9, "2*g + 1");
  EXPECT_EQ(x, F9->from_int(2) * F9->generator() + F9->one());
  EXPECT_EQ(parse_fq(F9, x.to_string()), x);
}

TEST(ResField, FieldMismatch) {
  auto A = FqField::make(3, 1);
  auto B = FqField::make(5, 1);
  EXPECT_THROW(A->one() + B->one(), field_mismatch);
}
