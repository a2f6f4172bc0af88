#include <gtest/gtest.h>

#include <random>

#include "sampling.hpp"
#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

WittClass W(const std::string& s) { return WittClass::of(parse_form(s)); }

Place at(const Field& F, const std::string& s) { return Place::parse(F, s); }

}  // namespace

TEST(ResidueTheory, SecondResidueAndSpecialization) {
  Field F = Field::parse("Q(T)");
  Place v = at(F, "T-1");
  EXPECT_EQ(second_residue(v, W("<3*(T-1), 5> over Q(T)")), W("<3> over Q"));
  EXPECT_TRUE(second_residue(v, W("<3*(T-1)^2> over Q(T)")).is_zero());
  EXPECT_EQ(specialization(v, W("<T+1> over Q(T)")), W("<2> over Q"));
  // over Q at p = 3: <3u> has residue <u mod 3>
  Field Q = Field::parse("Q");
  EXPECT_EQ(second_residue(Place::padic(Q, 3), W("<6> over Q")), W("<2> over F(3)"));
}

TEST(ResidueTheory, Unramified) {
  Field F = Field::parse("Qp(3)(T)");
  Place v = at(F, "T");
  EXPECT_TRUE(is_unramified(v, W("<T+1> over Qp(3)(T)")));
  EXPECT_FALSE(is_unramified(v, W("<T> over Qp(3)(T)")));
  BaseField K = BaseField::padic(3);
  WittClass c = WittClass::of_scalars(Field(K), {K.nonresidue()});
  WittClass x = one_plus_pi_minus_one(F, Poly::x(), extend_constant(F, c));
  EXPECT_FALSE(is_unramified(v, x));
  EXPECT_EQ(second_residue(v, x), c);
}

TEST(ResidueTheory, ContractionExamples) {
  Field R = Field::parse("R(T)");
  Place v = at(R, "T");
  ContractionClass u = contraction_classify(v, W("<T^2+1> over R(T)"));
  EXPECT_TRUE(u.is_trivial());
  ContractionClass t = contraction_classify(v, W("<T> over R(T)"));
  EXPECT_TRUE(t.a_present);
  EXPECT_EQ(t.a_component, 1);

  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  WittClass c = WittClass::of_scalars(Field(K), {K.nonresidue()});
  ContractionClass q = contraction_classify(at(F, "T"), one_plus_pi_minus_one(F, Poly::x(), extend_constant(F, c)));
  EXPECT_FALSE(q.a_present);
  EXPECT_EQ(q.torsion_component.value, c);
}

TEST(ResidueTheory, ContractionIsAHomomorphism) {
  for (BaseField K : {BaseField::padic(3), BaseField::real(), BaseField::finite(5)}) {
    Field F = Field::rational_functions(K);
    std::vector<Place> places = {at(F, "T"), at(F, "T-1"), Place::infinity(F)};
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
      WittClass x = detail::random_unit(F, rng, true, {0, 1, 2});
      WittClass y = detail::random_unit(F, rng, true, {0, 1, 2});
      for (const auto& v : places)
        EXPECT_EQ(contraction_classify(v, x * y), combine(contraction_classify(v, x), contraction_classify(v, y)))
            << F.name() << " " << v.name() << " x=" << x.to_string() << " y=" << y.to_string();
    }
  }
}

TEST(ResidueTheory, UnitResidueIsAHomomorphism) {
  for (BaseField K : {BaseField::padic(3), BaseField::finite(5)}) {
    Field F = Field::rational_functions(K);
    Place v = at(F, "T");
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
      WittClass a = sampling::torsion(K, rng), b = sampling::torsion(K, rng);
      WittClass x = one_plus_pi_minus_one(F, Poly::x(), extend_constant(F, a));
      WittClass y = one_plus_pi_minus_one(F, Poly::x(), extend_constant(F, b));
      EXPECT_EQ(unit_residue(v, x).value, a);
      EXPECT_EQ(unit_residue(v, x * y), boxplus(unit_residue(v, x), unit_residue(v, y)));
    }
  }
}

TEST(ResidueTheory, MilnorResidues) {
  Field F = Field::parse("Q(T)");
  MilnorResidues c = milnor_total_residue(W("<3,-5> over Q(T)"));
  EXPECT_TRUE(c.finite.empty());
  MilnorResidues t = milnor_total_residue(W("<T> over Q(T)"));
  ASSERT_EQ(t.finite.size(), 1u);
  EXPECT_EQ(t.finite[0].first.name(), at(F, "T").name());
  EXPECT_EQ(t.finite[0].second, W("<1> over Q"));
  MilnorResidues two = milnor_total_residue(W("<T,-(T-1)> over Q(T)"));
  ASSERT_EQ(two.finite.size(), 2u);
  for (const auto& [v, w] : two.finite) {
    if (v.pi() == Poly::x()) EXPECT_EQ(w, W("<1> over Q"));
    else EXPECT_EQ(w, W("<-1> over Q"));
  }
}

TEST(ResidueTheory, MilnorLiftRoundTrip) {
  Field F = Field::parse("Q(T)");
  EXPECT_TRUE(milnor_lift(F, {}).is_zero());
  WittClass c = W("<7> over Q");
  WittClass x = milnor_lift(F, {{Poly::x(), c}});
  MilnorResidues r = milnor_total_residue(x);
  ASSERT_EQ(r.finite.size(), 1u);
  EXPECT_EQ(r.finite[0].second, c);

  BaseField K = BaseField::padic(3);
  Field G = Field::rational_functions(K);
  auto targets = torsion_targets(K);
  for (const auto& a : targets)
    for (const auto& b : targets) {
      WittClass y = milnor_lift(G, {{Poly::x(), a}, {Poly::linear(K, 2), b}});
      for (const auto& [v, w] : milnor_total_residue(y).finite) EXPECT_EQ(w, v.pi() == Poly::x() ? a : b);
    }
}

TEST(ResidueTheory, UnitsResidueSequence) {
  for (BaseField K : {BaseField::padic(3), BaseField::real(), BaseField::finite(5)}) {
    SequenceReport r = units_residue_sequence_check(K, {Poly::x(), Poly::linear(K, 1)}, 20);
    EXPECT_TRUE(r.ok()) << K.name() << (r.failures.empty() ? "" : ": " + r.failures.front());
  }
}

TEST(ResidueTheory, LiftedTrivialTargetIsConstant) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  Place v = at(F, "T");
  WittClass x = lift_contraction(v, trivial_class(v));
  EXPECT_TRUE(is_constant_class(x, {Poly::x()}));
}

TEST(ResidueTheory, TorsionLevelResidue) {
  BaseField K = BaseField::padic(3);
  Field F = Field::rational_functions(K);
  Place v = at(F, "T");
  EXPECT_TRUE(torsion_level_residue(1, v, TorsionLevelElement(1, WittClass::zero(F))).value.is_zero());
  WittClass a = WittClass::of_scalars(Field(K), {1, -3});
  for (int n = 1; n <= 3; ++n) {
    WittClass x = (pi_class(F, Poly::x()) - WittClass::one(F)) * extend_constant(F, a);
    TorsionLevelElement r = torsion_level_residue(n, v, TorsionLevelElement(n, x));
    EXPECT_EQ(r.level, n + 1);
    EXPECT_EQ(r.value, a);
  }
  EXPECT_THROW(torsion_level_residue(2, v, TorsionLevelElement(1, WittClass::zero(F))), DomainError);
}

TEST(ResidueTheory, AxiomSuites) {
  for (BaseField K : {BaseField::padic(3), BaseField::rationals(), BaseField::finite(5), BaseField::real()})
    for (AxiomScenario s : {AxiomScenario::A1, AxiomScenario::A2, AxiomScenario::A3i, AxiomScenario::A3ii}) {
      AxiomReport r = axiom_check(s, K, 40, 3);
      EXPECT_TRUE(r.ok()) << K.name() << " " << r.scenario << ": "
                          << (r.counterexamples.empty() ? std::string() : r.counterexamples.front());
      EXPECT_EQ(r.samples, 40);
    }
}

TEST(ResidueTheory, DegreeTwoPlaceOverQIsUnsupported) {
  Field F = Field::parse("Q(T)");
  Place v = at(F, "T^2+1");
  EXPECT_FALSE(v.residue_field_supported());
  EXPECT_THROW(second_residue(v, W("<T^2+1> over Q(T)")), UnsupportedError);
}

TEST(ResidueTheory, MilnorSequenceCheck) {
  for (BaseField K : {BaseField::padic(3), BaseField::rationals(), BaseField::finite(5)}) {
    MilnorReport r = milnor_sequence_check(K, {Poly::x(), Poly::linear(K, 1)}, 60, 4);
    EXPECT_TRUE(r.ok()) << K.name() << (r.failures.empty() ? "" : ": " + r.failures.front());
    EXPECT_EQ(r.kernel_samples, 60);
  }
  EXPECT_EQ(milnor_sequence_check(BaseField::finite(5), {Poly::x()}, 0).round_trips, 4);
  Field F = Field::parse("Q(T)");
  EXPECT_THROW(milnor_sequence_check(BaseField::rationals(), {at(F, "T^2+1").pi()}, 1), UnsupportedError);
}
