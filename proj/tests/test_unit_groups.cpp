#include <gtest/gtest.h>

#include <set>

#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

WittClass W(const std::string& s) { return WittClass::of(parse_form(s)); }

/// 1 + <1,-a,-b,ab> with (a,b)_p = -1.
WittClass quaternion_unit(long p) {
  BaseField K = BaseField::padic(p);
  Scalar a = K.nonresidue();
  return WittClass::of_scalars(Field(K), {1, 1, -a, -Scalar(p), a * p});
}

}  // namespace

TEST(UnitGroups, IsUnit) {
  EXPECT_TRUE(is_unit(W("<3> over Q")));
  EXPECT_TRUE(is_unit(quaternion_unit(3)));
  EXPECT_FALSE(is_unit(W("<1,1> over Q")));
  EXPECT_FALSE(is_unit(W("<1,1,1> over Q")));
  EXPECT_TRUE(is_unit(W("<1,1,-1> over Q")));
  EXPECT_TRUE(is_unit(gw_class(parse_form("<-2> over Qp(3)"))));
  EXPECT_FALSE(is_unit(gw_class(parse_form("<1,1,-1> over Qp(3)"))));
}

TEST(UnitGroups, Inverses) {
  WittClass u = W("<6> over Q");
  EXPECT_EQ(unit_inverse(u), u);
  WittClass a = W("<1,-3,1,-3> over Q");
  WittClass one = WittClass::one(a.field());
  EXPECT_EQ(unit_inverse(one + a), one - a);
  for (long p : {3L, 5L, 7L}) {
    WittClass x = quaternion_unit(p);
    EXPECT_EQ(x * unit_inverse(x), WittClass::one(x.field()));
  }
  EXPECT_THROW(unit_inverse(W("<1,1> over Q")), DomainError);
}

TEST(UnitGroups, Decomposition) {
  UnitDecomposition d = unit_decompose(W("<5> over Qp(3)"));
  EXPECT_EQ(d.sign, 1);
  EXPECT_EQ(d.square_class, Element(BaseField::padic(3).square_class(5)));
  EXPECT_TRUE(d.nilpotent_part.is_zero());

  UnitDecomposition m = unit_decompose(W("<-1> over Q"));
  EXPECT_EQ(m.sign, -1);
  EXPECT_EQ(m.square_class, Element(1));
  EXPECT_TRUE(m.nilpotent_part.is_zero());

  WittClass x = quaternion_unit(3);
  UnitDecomposition q = unit_decompose(x);
  EXPECT_EQ(q.sign, 1);
  EXPECT_EQ(q.square_class, Element(1));
  EXPECT_EQ(q.nilpotent_part, x - WittClass::one(x.field()));
  EXPECT_TRUE(is_nilpotent(q.nilpotent_part));
}

TEST(UnitGroups, DecompositionRoundTripsOnAllFiniteUnits) {
  for (BaseField K : {BaseField::padic(3), BaseField::padic(5), BaseField::finite(5), BaseField::finite(3)}) {
    const auto& R = FiniteWittRing::get(K);
    for (int u : R.units()) {
      WittClass x = R.element(u);
      UnitDecomposition d = unit_decompose(x);
      EXPECT_EQ(recompose(Field(K), d), x);
      EXPECT_TRUE(is_nilpotent(d.nilpotent_part));
    }
  }
}

TEST(UnitGroups, RepresentedBySquareClass) {
  for (long p : {3L, 5L, 7L}) EXPECT_FALSE(represented_by_square_class(quaternion_unit(p)).has_value());
  auto three = represented_by_square_class(W("<3> over Q"));
  ASSERT_TRUE(three);
  EXPECT_EQ(*three, Element(3));
  auto minus = represented_by_square_class(W("<-1> over R"));
  ASSERT_TRUE(minus);
  EXPECT_EQ(*minus, Element(-1));
}

TEST(UnitGroups, PushoutSquare) {
  for (long p : {3L, 5L, 7L}) {
    PushoutReport r = verify_pushout_square(BaseField::padic(p));
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.witt_size, 16);
    EXPECT_EQ(r.units, 8);
    EXPECT_EQ(r.square_classes, 4);
    EXPECT_EQ(r.quotient(), "Z/2");
  }
  PushoutReport f5 = verify_pushout_square(BaseField::finite(5));
  EXPECT_TRUE(f5.ok());
  EXPECT_EQ(f5.witt_size, 4);
  PushoutReport c = verify_pushout_square(BaseField::square_closed());
  EXPECT_EQ(c.units, 1);
}

TEST(UnitGroups, SquareClassesInOnePlusNilAreSumsOfSquares) {
  for (BaseField K : {BaseField::padic(3), BaseField::padic(5)}) {
    Field F(K);
    auto classes = K.square_classes();
    ASSERT_TRUE(classes);
    for (const auto& u : *classes) {
      WittClass n = WittClass::of_scalars(F, {u}) - WittClass::one(F);
      EXPECT_EQ(is_nilpotent(n), elem::is_sum_of_squares(F, Element(u)));
    }
  }
  Field Q = Field::parse("Q");
  EXPECT_TRUE(is_nilpotent(W("<2> over Q") - WittClass::one(Q)));
  EXPECT_FALSE(is_nilpotent(W("<-1> over Q") - WittClass::one(Q)));
  EXPECT_TRUE(is_nilpotent(W("<3> over Q") - WittClass::one(Q)));
}

TEST(UnitGroups, GWUnitsOverWUnitsHaveKernelPlusMinusOne) {
  BaseField K = BaseField::padic(3);
  Field F(K);
  const auto& R = FiniteWittRing::get(K);
  // GW^x: rank +-1 lifts of W^x; both lifts of 1 are +-1
  int gw_units = 0;
  std::set<int> images;
  for (int u : R.units())
    for (long rank : {1L, -1L}) {
      WittClass w = R.element(u);
      if (w.dim_parity() != 1) continue;
      GWClass g(w, rank);
      if (is_unit(g)) {
        ++gw_units;
        images.insert(u);
      }
    }
  EXPECT_EQ(gw_units, 2 * static_cast<int>(R.units().size()));
  EXPECT_EQ(images.size(), R.units().size());
  EXPECT_TRUE(is_unit(GWClass(WittClass::one(F), -1)));
}

TEST(UnitGroups, NQClasses) {
  WittClass x = quaternion_unit(3);
  Field F = x.field();
  EXPECT_FALSE(nq_eq(nq_class(x), nq_class(WittClass::one(F))));
  EXPECT_TRUE(nq_eq(nq_class(x * WittClass::of_scalars(F, {3})), nq_class(x)));
  EXPECT_THROW(nq_class(W("<1,1> over Qp(3)")), DomainError);
}
