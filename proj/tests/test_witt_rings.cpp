#include <gtest/gtest.h>

#include <random>

#include "sampling.hpp"
#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

WittClass W(const std::string& s) { return WittClass::of(parse_form(s)); }

}  // namespace

TEST(WittRings, WittClassExamples) {
  EXPECT_TRUE(W("<1,-1> over Q").is_zero());
  WittClass x = W("<1,1,-3,-3> over Q");
  EXPECT_FALSE(x.is_zero());
  EXPECT_TRUE((x + x).is_zero());
  EXPECT_EQ(torsion_order(x), 2);
  BaseField K = BaseField::padic(3);
  Scalar a = K.nonresidue();
  EXPECT_FALSE(WittClass::of_scalars(Field(K), {1, -a, -3, 3 * a}).is_zero());
}

TEST(WittRings, RingOperations) {
  WittClass x = W("<2,-5,7> over Q");
  Field Q = x.field();
  EXPECT_TRUE((x + (-x)).is_zero());
  EXPECT_EQ(WittClass::one(Q) * x, x);
  EXPECT_EQ(x - x, WittClass::zero(Q));
  EXPECT_EQ(x.pow(2), x * x);
  EXPECT_EQ(x.times(3), x + x + x);
  EXPECT_THROW(x + W("<1> over R"), DomainError);
}

TEST(WittRings, FundamentalIdealTorsionNilpotence) {
  EXPECT_TRUE(in_fundamental_ideal(WittClass::zero(Field::parse("Q"))));
  EXPECT_FALSE(in_fundamental_ideal(W("<5> over Q")));
  EXPECT_TRUE(in_fundamental_ideal(W("<1,-3> over Q")));
  EXPECT_TRUE(is_torsion(W("<1,2,3> over Qp(5)")));
  EXPECT_FALSE(is_torsion(W("<1,1> over Q")));
  EXPECT_FALSE(torsion_order(W("<1,1> over Q")).has_value());
  EXPECT_TRUE(is_nilpotent(W("<1,1,-3,-3> over Q")));
  EXPECT_FALSE(is_nilpotent(W("<7> over Q")));
  EXPECT_TRUE(is_nilpotent(WittClass::zero(Field::parse("Q"))));
  // over R(T): <T,-T^3> has zero signature everywhere
  EXPECT_TRUE(is_torsion(W("<T,-T^3> over R(T)")));
  EXPECT_FALSE(is_torsion(W("<T,1> over R(T)")));
}

TEST(WittRings, FiniteTablesMatchOracle) {
  // frozen from tests/oracles/oracles.py: |W(F_p)| = 4, |W(Q_p)| = 16
  for (long p : {3L, 5L, 7L}) {
    EXPECT_EQ(FiniteWittRing::get(BaseField::finite(p)).size(), 4);
    EXPECT_EQ(FiniteWittRing::get(BaseField::padic(p)).size(), 16);
  }
  EXPECT_EQ(FiniteWittRing::get(BaseField::square_closed()).size(), 2);
}

TEST(WittRings, FiniteTablesSatisfyRingAxioms) {
  for (BaseField K : {BaseField::padic(3), BaseField::finite(5), BaseField::finite(3), BaseField::padic(2)}) {
    const auto& R = FiniteWittRing::get(K);
    int n = R.size();
    for (int a = 0; a < n; ++a) {
      EXPECT_EQ(R.add(a, R.neg(a)), R.zero());
      EXPECT_EQ(R.mul(a, R.one()), a);
      for (int b = 0; b < n; ++b) {
        EXPECT_EQ(R.add(a, b), R.add(b, a));
        EXPECT_EQ(R.mul(a, b), R.mul(b, a));
        for (int c = 0; c < n; ++c) {
          EXPECT_EQ(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c)));
          EXPECT_EQ(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c)));
        }
      }
      // table entries agree with symbolic arithmetic
      EXPECT_EQ(R.element(R.add(a, R.one())), R.element(a) + WittClass::one(Field(K)));
    }
  }
}

TEST(WittRings, BoxplusExamples) {
  Field Q = Field::parse("Q");
  TorsionLevelElement a(1, W("<1,-3,1,-3> over Q"));
  TorsionLevelElement zero(1, WittClass::zero(Q));
  EXPECT_EQ(boxplus(zero, a), a);
  ASSERT_TRUE((a.value * a.value).is_zero());
  EXPECT_EQ(boxplus(a, a), zero);
  EXPECT_EQ(boxplus_inverse(zero), zero);
  EXPECT_EQ(boxplus_inverse(a).value, -a.value);
  Field Q3 = Field::parse("Qp(3)");
  TorsionLevelElement one(1, WittClass::one(Q3));
  EXPECT_TRUE(boxplus(one, one).value.is_zero());
  EXPECT_EQ(boxplus_inverse(one), one);
  EXPECT_THROW(TorsionLevelElement(1, W("<1> over Q")), DomainError);
  EXPECT_THROW(boxplus(TorsionLevelElement(1, WittClass::zero(Q)), TorsionLevelElement(2, WittClass::zero(Q))),
               DomainError);
}

TEST(WittRings, BoxplusGroupLaws) {
  for (BaseField K : {BaseField::padic(3), BaseField::rationals(), BaseField::finite(5)}) {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i < 60; ++i) {
        TorsionLevelElement a(n, sampling::torsion(K, rng)), b(n, sampling::torsion(K, rng)),
            c(n, sampling::torsion(K, rng));
        EXPECT_EQ(boxplus(boxplus(a, b), c), boxplus(a, boxplus(b, c)));
        EXPECT_EQ(boxplus(a, b), boxplus(b, a));
        TorsionLevelElement inv = boxplus_inverse(a);
        EXPECT_TRUE(boxplus(a, inv).value.is_zero());
      }
    }
  }
}

TEST(WittRings, FiniteBoxplusTableIsAGroup) {
  const auto& R = FiniteWittRing::get(BaseField::padic(3));
  for (int n = 1; n <= 3; ++n)
    for (int a = 0; a < R.size(); ++a) {
      bool has_inverse = false;
      for (int b = 0; b < R.size(); ++b) has_inverse = has_inverse || R.boxplus(n, a, b) == R.zero();
      EXPECT_TRUE(has_inverse);
      EXPECT_EQ(R.boxplus(n, a, R.zero()), a);
    }
}

TEST(WittRings, GrothendieckWitt) {
  Field Q = Field::parse("Q");
  GWClass h = gw_class(parse_form("<1,-1> over Q"));
  EXPECT_EQ(h.rank(), 2);
  EXPECT_TRUE(h.witt().is_zero());
  EXPECT_FALSE(h == GWClass::zero(Q));
  GWClass x = gw_class(parse_form("<2,3> over Q"));
  EXPECT_EQ((x * GWClass::one(Q)).rank(), 2);
  EXPECT_EQ((x + h).rank(), 4);
  EXPECT_EQ((x - x).rank(), 0);
  EXPECT_THROW(GWClass(WittClass::one(Q), 2), DomainError);
}

TEST(WittRings, TorsionOverRealFunctionField) {
  // <1,-(T^2+1)> has zero signature everywhere and is 2-torsion
  WittClass x = W("<1,-T^2-1> over R(T)");
  EXPECT_TRUE(is_torsion(x));
  EXPECT_FALSE(x.is_zero());
}
