#include <gtest/gtest.h>

#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

std::vector<Place> places(const Field& F, std::initializer_list<const char*> names) {
  std::vector<Place> v;
  for (const char* n : names) v.push_back(Place::parse(F, n));
  return v;
}

}  // namespace

TEST(GerstenComplex, BuildProjectiveLineOverQ3) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  GerstenComplexData c = build_complex(K, Scheme::ProjectiveLine, Sheaf::GWUnits, places(F, {"T", "inf"}));
  ASSERT_EQ(c.degree1.size(), 2u);
  for (const auto& t : c.degree1) {
    EXPECT_FALSE(t.a_present);
    EXPECT_EQ(t.order, 16);
  }
}

TEST(GerstenComplex, BuildProjectiveLineOverR) {
  BaseField K = BaseField::real();
  Field F = Field::rational_functions(K);
  GerstenComplexData c = build_complex(K, Scheme::ProjectiveLine, Sheaf::GWUnits, places(F, {"T"}));
  ASSERT_EQ(c.degree1.size(), 2u);  // infinity is added on P^1
  for (const auto& t : c.degree1) {
    EXPECT_TRUE(t.a_present);
    EXPECT_EQ(t.order, 2);
  }
}

TEST(GerstenComplex, BuildDvrAndErrors) {
  BaseField K = BaseField::finite(5);
  Field F = Field::rational_functions(K);
  GerstenComplexData c = build_complex(K, Scheme::DVRSpec, Sheaf::TorsionLevel, places(F, {"T"}), 1);
  ASSERT_EQ(c.degree1.size(), 1u);
  EXPECT_EQ(c.degree1[0].group, "W(F(5))_tor^(2)");
  EXPECT_THROW(build_complex(K, Scheme::DVRSpec, Sheaf::GWUnits, places(F, {"T", "T-1"})), DomainError);
  EXPECT_THROW(build_complex(K, Scheme::AffineLine, Sheaf::GWUnits, places(F, {"inf"})), DomainError);
  EXPECT_TRUE(check_d_squared(c).ok);
  EXPECT_THROW(parse_sheaf("K2"), ParseError);
  EXPECT_EQ(parse_scheme("P1"), Scheme::ProjectiveLine);
}

TEST(GerstenComplex, H0Membership) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  GerstenComplexData c = build_complex(K, Scheme::ProjectiveLine, Sheaf::GWUnits, places(F, {"T", "inf"}));
  EXPECT_TRUE(in_h0(c, WittClass::of(parse_form("<5> over Qp(3)(T)"))));
  EXPECT_FALSE(in_h0(c, WittClass::of(parse_form("<T> over Qp(3)(T)"))));
  WittClass u = WittClass::of_scalars(Field(K), {K.nonresidue()});
  EXPECT_FALSE(in_h0(c, one_plus_pi_minus_one(F, Poly::x(), extend_constant(F, u))));
}

TEST(GerstenComplex, H1OfP1) {
  H1Report r = h1_p1(BaseField::real(), Sheaf::GWUnits);
  EXPECT_EQ(r.cardinality, 2);
  EXPECT_TRUE(r.stabilized);
  EXPECT_TRUE(r.o_minus_1_nontrivial);
  EXPECT_TRUE(r.o_minus_2_trivial);
  EXPECT_FALSE(line_bundle_class_trivial(BaseField::real(), {-1}));
  EXPECT_TRUE(line_bundle_class_trivial(BaseField::real(), tangent_bundle_p1()));

  H1Report q = h1_p1(BaseField::padic(3), Sheaf::GWUnits);
  EXPECT_EQ(q.cardinality, 16);
  EXPECT_EQ(q.pic2_image, 2);
  EXPECT_EQ(q.nq_cardinality, 8);
  EXPECT_TRUE(q.two_way_consistent);
  EXPECT_EQ(q.structural_a, 16);
  EXPECT_EQ(q.structural_s, 32);

  EXPECT_EQ(h1_p1(BaseField::padic(3), Sheaf::NQ).cardinality, 8);
  EXPECT_EQ(h1_p1(BaseField::padic(3), Sheaf::SquareClasses).cardinality, 2);
  EXPECT_EQ(h1_p1(BaseField::finite(5), Sheaf::GWUnits).cardinality, 4);
}

TEST(GerstenComplex, H1StabilizesUpToFourPoints) {
  for (BaseField K : {BaseField::padic(3), BaseField::finite(5)}) {
    H1Report r = h1_p1(K, Sheaf::GWUnits, 4);
    EXPECT_TRUE(r.stabilized) << K.name();
    ASSERT_EQ(r.by_support.size(), 4u);
  }
}

TEST(GerstenComplex, SphereCohomologyMatchesH1) {
  for (BaseField K : {BaseField::padic(3), BaseField::padic(5), BaseField::finite(5), BaseField::real()})
    EXPECT_EQ(sphere_cohomology(K, 1, 1, 1).order, h1_p1(K, Sheaf::GWUnits).cardinality) << K.name();
  EXPECT_EQ(sphere_cohomology(BaseField::real(), 1, 1, 1).description, "Z/2 + W(R)_tor^(1)");
  EXPECT_TRUE(sphere_cohomology(BaseField::padic(3), 1, 2, 2).trivial());
}

TEST(GerstenComplex, ExactDiagram) {
  for (BaseField K : {BaseField::padic(3), BaseField::real(), BaseField::finite(5)}) {
    DiagramReport r = exact_diagram_check(K, {0, 1});
    EXPECT_TRUE(r.ok()) << K.name() << (r.failures.empty() ? "" : ": " + r.failures.front());
  }
}

TEST(GerstenComplex, Orientation) {
  EXPECT_TRUE(is_orientable_ST(3, BaseField::real()).orientable);
  EXPECT_FALSE(is_orientable_ST(2, BaseField::real()).orientable);
  EXPECT_EQ(is_orientable_ST(2, BaseField::real()).reason, "real-odd-exponent");
  EXPECT_TRUE(is_orientable_ST(2, BaseField::finite(5)).orientable);
  EXPECT_EQ(is_orientable_ST(2, BaseField::finite(5)).reason, "nonreal-base");
  EXPECT_TRUE(is_orientable_ST(2, BaseField::square_closed()).orientable);
  EXPECT_EQ(FiniteWittRing::get(BaseField::square_closed()).units().size(), 1u);
  EXPECT_EQ(orientation_character(4, BaseField::padic(3)).exponent, 5);
  EXPECT_THROW(orientation_character(1, BaseField::rationals()), UnsupportedError);
}

TEST(GerstenComplex, P1FibrationClasses) {
  auto r = p1_fibration_classes(BaseField::real());
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1].a_component, 1);
  EXPECT_EQ(r[1].transition, WittClass::of(parse_form("<T> over R(T)")));
  EXPECT_EQ(p1_fibration_classes(BaseField::padic(3)).size(), 16u);
  EXPECT_EQ(p1_fibration_classes(BaseField::finite(5)).size(), 4u);
  EXPECT_THROW(p1_fibration_classes(BaseField::rationals()), UnsupportedError);
}
