#include <gtest/gtest.h>

#include <random>
#include <tuple>
#include <vector>

#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

Element T() { return elem::from_poly_factor(Poly::x()); }

}  // namespace

TEST(ArithFields, ParseFieldDescriptors) {
  EXPECT_EQ(Field::parse("Q").name(), "Q");
  EXPECT_EQ(Field::parse("Qp(3)").base().kind(), BaseKind::PAdic);
  EXPECT_EQ(Field::parse("F(5)(T)").name(), "F(5)(T)");
  EXPECT_TRUE(Field::parse("R(T)").is_function_field());
  EXPECT_EQ(Field::parse("C").base().kind(), BaseKind::SquareClosed);
  EXPECT_THROW(Field::parse("Qp(4)"), ParseError);
  EXPECT_THROW(Field::parse("Z"), ParseError);
}

TEST(ArithFields, IsSquare) {
  EXPECT_FALSE(BaseField::real().is_square(-1));
  EXPECT_FALSE(BaseField::padic(3).is_square(3));
  EXPECT_TRUE(BaseField::finite(7).is_square(2));
  EXPECT_TRUE(BaseField::padic(5).is_square(-1));
  EXPECT_FALSE(BaseField::padic(3).is_square(-1));
  EXPECT_TRUE(BaseField::rationals().is_square(Scalar(9, 4)));
}

// frozen from tests/oracles/oracles.py: squares mod 7 are {1, 2, 4}
TEST(ArithFields, SquaresModSevenMatchOracle) {
  BaseField K = BaseField::finite(7);
  std::vector<long> squares;
  for (long x = 1; x < 7; ++x)
    if (K.is_square(K.from_integer(x))) squares.push_back(x);
  EXPECT_EQ(squares, (std::vector<long>{1, 2, 4}));
}

TEST(ArithFields, SumsOfSquares) {
  Field Q(BaseField::rationals());
  EXPECT_TRUE(elem::is_sum_of_squares(Q, Element(2)));
  EXPECT_FALSE(elem::is_sum_of_squares(Q, Element(-1)));
  EXPECT_FALSE(elem::is_sum_of_squares(Field::parse("R(T)"), T()));
  EXPECT_TRUE(elem::is_sum_of_squares(Field::parse("Qp(3)(T)"), T()));
  Field QT = Field::parse("Q(T)");
  EXPECT_TRUE(elem::is_sum_of_squares(QT, parse_element(QT, "T^2+1")));
  EXPECT_FALSE(elem::is_sum_of_squares(QT, parse_element(QT, "T^2-2")));
}

// frozen from tests/oracles/oracles.py (primitive solutions mod p^k)
TEST(ArithFields, HilbertSymbolsMatchBruteForceOracle) {
  const std::vector<std::tuple<long, long, long, int>> table = {
      {0, -1, -1, -1}, {0, -1, 3, 1}, {0, 6, 10, 1},  {2, -1, -1, -1}, {2, -1, 3, -1}, {2, 5, 2, -1},
      {2, 3, 3, -1},   {2, -1, 2, 1}, {2, 2, 3, -1},  {2, -3, 7, 1},   {2, 6, 10, 1},  {3, -1, -1, 1},
      {3, -1, 3, -1},  {3, 3, 3, -1}, {3, 2, 3, -1},  {3, 6, 10, 1},   {5, 5, 2, -1},  {5, 2, 5, -1},
      {5, -1, 3, 1},   {7, -3, 7, 1}, {7, -1, -1, 1},
  };
  for (const auto& [p, a, b, v] : table) EXPECT_EQ(hilbert_symbol(p, a, b), v) << p << " " << a << " " << b;
}

TEST(ArithFields, HilbertSymbolProperties) {
  std::mt19937_64 rng(0);
  const long pool[] = {-1, 2, -2, 3, -3, 5, 6, -6, 7, 10, 15, -15};
  for (long p : {0L, 2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 100; ++i) {
      long a = pool[rng() % 12], b = pool[rng() % 12], c = pool[rng() % 12];
      EXPECT_EQ(hilbert_symbol(p, a, b), hilbert_symbol(p, b, a));
      EXPECT_EQ(hilbert_symbol(p, a, b * c), hilbert_symbol(p, a, b) * hilbert_symbol(p, a, c));
      EXPECT_EQ(hilbert_symbol(p, a, -a), 1);
    }
  }
  // product formula over the places of Q
  for (int i = 0; i < 100; ++i) {
    long a = pool[rng() % 12], b = pool[rng() % 12];
    int prod = hilbert_symbol(0, a, b);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) prod *= hilbert_symbol(p, a, b);
    EXPECT_EQ(prod, 1) << a << " " << b;
  }
}

TEST(ArithFields, SquareClasses) {
  auto q3 = BaseField::padic(3).square_classes();
  ASSERT_TRUE(q3);
  EXPECT_EQ(q3->size(), 4u);
  EXPECT_EQ(BaseField::real().square_classes()->size(), 2u);
  auto f5 = BaseField::finite(5).square_classes();
  EXPECT_EQ(*f5, (std::vector<Scalar>{1, 2}));
  EXPECT_EQ(BaseField::square_closed().square_classes()->size(), 1u);
  EXPECT_FALSE(BaseField::rationals().square_classes());
  EXPECT_EQ(BaseField::rationals().square_class(Scalar(-12, 5)), -15);
}

TEST(ArithFields, Orderings) {
  EXPECT_EQ(orderings(Field::parse("Qp(7)")), Orderings::None);
  EXPECT_EQ(orderings(Field::parse("Q")), Orderings::OneArchimedean);
  EXPECT_EQ(orderings(Field::parse("F(5)(T)")), Orderings::None);
  EXPECT_EQ(orderings(Field::parse("R(T)")), Orderings::RealPoints);
}

TEST(ArithFields, PrimePowerFields) {
  BaseField K = BaseField::finite(9);
  EXPECT_EQ(K.order(), 9);
  EXPECT_EQ(K.characteristic(), 3u);
  // -1 is a square in F_9
  EXPECT_TRUE(K.is_square(K.neg(K.one())));
  Scalar n = K.nonresidue();
  EXPECT_FALSE(K.is_square(n));
  EXPECT_EQ(K.mul(n, K.inv(n)), K.one());
}

TEST(ArithFields, ElementParsingAndSquareClass) {
  Field F = Field::parse("Q(T)");
  Element a = parse_element(F, "4*T^3*(T-1)^2/(T+1)");
  Element s = elem::square_class(F, a);
  EXPECT_EQ(elem::format(F, s), elem::format(F, parse_element(F, "T*(T+1)")));
  EXPECT_THROW(parse_element(F, "0"), DomainError);
  EXPECT_THROW(parse_element(F, "T+"), ParseError);
}

TEST(ArithFields, PolynomialFactorizationOverFiniteField) {
  BaseField K = BaseField::finite(5);
  // T^4 - 1 = (T-1)(T-2)(T-3)(T-4) over F_5
  Poly p = parse_poly(K, "T^4-1");
  auto [lead, factors] = poly::factor(K, p);
  EXPECT_EQ(lead, 1);
  EXPECT_EQ(factors.size(), 4u);
  Poly prod = Poly::constant(lead);
  for (const auto& f : factors) prod = poly::mul(K, prod, poly::pow(K, f.pi, static_cast<unsigned long>(f.e)));
  EXPECT_EQ(prod, p);
}

TEST(ArithFields, SturmRootCounts) {
  EXPECT_EQ(poly::count_real_roots(parse_poly(BaseField::rationals(), "T^2+1")), 0);
  EXPECT_EQ(poly::count_real_roots(parse_poly(BaseField::rationals(), "T^3-2*T")), 3);
  EXPECT_EQ(poly::count_real_roots(parse_poly(BaseField::rationals(), "(T-1)^2*(T+3)")), 2);
}

TEST(ArithFields, FieldArithmeticProperties) {
  std::mt19937_64 rng(1);
  for (BaseField K : {BaseField::finite(5), BaseField::finite(9), BaseField::padic(3), BaseField::rationals()}) {
    for (int i = 0; i < 200; ++i) {
      Scalar a = K.from_integer(static_cast<long>(rng() % 40) + 1);
      Scalar b = K.from_integer(static_cast<long>(rng() % 40) + 1);
      if (K.is_zero(a) || K.is_zero(b)) continue;
      EXPECT_EQ(K.mul(a, b), K.mul(b, a));
      EXPECT_EQ(K.div(K.mul(a, b), b), a);
      EXPECT_TRUE(K.is_square(K.mul(a, a)));
      EXPECT_TRUE(K.same_square_class(K.square_class(a), a));
    }
  }
}
