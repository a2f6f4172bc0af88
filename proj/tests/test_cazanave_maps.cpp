#include <gtest/gtest.h>

#include <random>

#include "sampling.hpp"
#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

GWClass gw(const Field& F, std::vector<Element> e) { return gw_class(DiagonalForm(F, std::move(e))); }

bool symmetric(const std::vector<std::vector<RatFunc>>& M) {
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j)
      if (M[i][j] != M[j][i]) return false;
  return true;
}

}  // namespace

TEST(CazanaveMaps, IdentityMap) {
  Field Q = Field::parse("Q");
  BezoutResult r = bezout_form(parse_map(Q, "X"));
  EXPECT_EQ(r.matrix.size(), 1u);
  EXPECT_EQ(r.gw, GWClass::one(Q));
}

TEST(CazanaveMaps, ParsedMapAndMatrix) {
  Field Q = Field::parse("Q");
  RationalMapP1 f = parse_map(Q, "X^3-2X / X^2-1");
  EXPECT_EQ(xdegree(f.A), 3);
  EXPECT_EQ(xdegree(f.B), 2);
  BezoutResult r = bezout_form(f);
  EXPECT_TRUE(symmetric(r.matrix));
  EXPECT_EQ(r.gw, gw(Q, {Element(1), Element(1), Element(1)}));
  EXPECT_EQ(r.gw.rank(), 3);
}

TEST(CazanaveMaps, FamilyFromFormOneOneOne) {
  Field Q = Field::parse("Q");
  RationalMapP1 f = family_from_form(Q, Element(1), Element(1), Element(1));
  RationalMapP1 g = parse_map(Q, "X^3-2*X / X^2-1");
  EXPECT_EQ(f.A, g.A);
  EXPECT_EQ(f.B, g.B);
}

TEST(CazanaveMaps, RandomTriplesRoundTrip) {
  for (BaseField K : {BaseField::rationals(), BaseField::finite(5), BaseField::padic(3)}) {
    Field F(K);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
      Element a1(sampling::scalar(K, rng)), a2(sampling::scalar(K, rng)), a3(sampling::scalar(K, rng));
      BezoutResult r = bezout_form(family_from_form(F, a1, a2, a3));
      EXPECT_TRUE(symmetric(r.matrix));
      EXPECT_EQ(r.gw.rank(), 3);
      EXPECT_EQ(r.gw, gw(F, {a1, a2, a3})) << K.name();
    }
  }
}

TEST(CazanaveMaps, EqualEntries) {
  Field Q = Field::parse("Q");
  for (long a : {2L, -3L, 7L}) EXPECT_EQ(bezout_form(family_from_form(Q, Element(a), Element(a), Element(a))).gw,
              gw(Q, {Element(a), Element(a), Element(a)}));
}

TEST(CazanaveMaps, FunctionFieldEntries) {
  Field F = Field::parse("Q(T)");
  Element t = elem::from_poly_factor(Poly::x());
  EXPECT_EQ(bezout_form(family_from_form(F, Element(1), t, elem::mul(F, t, Element(3)))).gw,
            gw(F, {Element(1), t, elem::mul(F, t, Element(3))}));
}

TEST(CazanaveMaps, TFamily) {
  for (BaseField K : {BaseField::padic(3), BaseField::rationals(), BaseField::finite(5)}) {
    Field F = Field::rational_functions(K);
    Element t = elem::from_poly_factor(Poly::x());
    for (long uv : {1L, 2L, -1L}) {
      Scalar u = K.from_integer(uv);
      GWClass g = bezout_form(t_family(K, u)).gw;
      EXPECT_EQ(g, gw(F, {Element(1), elem::mul(F, t, Element(u)), Element(u)})) << K.name() << " u=" << uv;
      // the T-family is family_from_form(1, u, uT)
      RationalMapP1 f = family_from_form(F, Element(1), Element(u), elem::mul(F, t, Element(u)));
      RationalMapP1 h = t_family(K, u);
      EXPECT_EQ(f.A, h.A);
      EXPECT_EQ(f.B, h.B);
    }
  }
}

TEST(CazanaveMaps, ClutchingClass) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  ClutchingClass n = clutching_class(bezout_form(t_family(K, K.nonresidue())).gw);
  EXPECT_FALSE(n.trivial);
  EXPECT_TRUE(n.s_present);
  EXPECT_EQ(n.b, WittClass::of_scalars(Field(K), {K.nonresidue()}));
  ClutchingClass one = clutching_class(bezout_form(t_family(K, Scalar(1))).gw);
  EXPECT_TRUE(one.trivial);
  ClutchingClass constant = clutching_class(gw_class(parse_form("<1,2,5> over Qp(3)(T)")));
  EXPECT_TRUE(constant.trivial);
  EXPECT_TRUE(constant.b.is_zero());
  EXPECT_THROW(clutching_class(gw_class(parse_form("<T-2> over Qp(3)(T)"))), UnsupportedError);
  EXPECT_THROW(clutching_class(GWClass::one(Field(K))), DomainError);
}

TEST(CazanaveMaps, ClutchingIsMultiplicative) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  Field k(K);
  std::mt19937_64 rng(22);
  WittClass P = pi_class(F, Poly::x()) - WittClass::one(F);
  for (int i = 0; i < 100; ++i) {
    WittClass a = sampling::torsion(K, rng), b = sampling::torsion(K, rng);
    WittClass ga = WittClass::one(F) + P * extend_constant(F, a);
    WittClass gb = WittClass::one(F) + P * extend_constant(F, b);
    ClutchingClass c = clutching_class(GWClass(ga * gb, 1));
    EXPECT_EQ(c.b, boxplus_value(1, a, b));
    EXPECT_EQ(clutching_class(GWClass(ga, 1)).b, a);
  }
}

TEST(CazanaveMaps, DegenerateInput) {
  Field Q = Field::parse("Q");
  EXPECT_THROW(parse_map(Q, "X^2-1 / X-1"), DomainError);
  EXPECT_THROW(parse_map(Q, "X / X^2"), DomainError);
  EXPECT_THROW(family_from_form(Q, Element(0), Element(1), Element(1)), DomainError);
  EXPECT_THROW(parse_map(Q, "X^2 - T / X"), ParseError);
}
