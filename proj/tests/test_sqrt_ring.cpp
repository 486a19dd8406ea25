#include <nashforge/sqrt_ring.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace nashforge;

TEST(UniPoly, DivmodReconstructsDividend) {
  const UniPoly a({make_rational(3), make_rational(-1, 2), Rational(0), make_rational(5), make_rational(2, 3)});
  const UniPoly b({make_rational(-2), Rational(1), make_rational(1, 7)});
  const auto [q, r] = a.divmod(b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
}

TEST(UniPoly, ShiftedPowerEvaluatesAsPower) {
  const UniPoly p = shifted_power(make_rational(1, 3), 5);
  EXPECT_EQ(p.degree(), 5);
  for (int i = -3; i <= 3; ++i) {
    const Rational s = make_rational(i, 4);
    EXPECT_EQ(p.eval(s), rational_pow(s - make_rational(1, 3), 5));
  }
  EXPECT_TRUE(p.divisible_by(shifted_power(make_rational(1, 3), 2)));
  EXPECT_FALSE(p.divisible_by(shifted_power(make_rational(1, 2), 1)));
}

TEST(UniPoly, ComposeAndDerivative) {
  const UniPoly p({Rational(1), Rational(0), Rational(3)});   // 1 + 3 s^2
  const UniPoly q({Rational(-1), Rational(2)});               // 2 s - 1
  const UniPoly c = p.compose(q);
  for (int i = -2; i <= 2; ++i) EXPECT_EQ(c.eval(Rational(i)), p.eval(q.eval(Rational(i))));
  EXPECT_EQ(p.derivative(), UniPoly({Rational(0), Rational(6)}));
  EXPECT_EQ(UniPoly::monomial(4, 3).lowest_power(), 4);
}

TEST(SqrtElem, ProductUsesSquareOfRoot) {
  // (1 + sqrt s)(1 - sqrt s) = 1 - s
  const SqrtElem a{UniPoly::constant(1), UniPoly::constant(1)};
  const SqrtElem b{UniPoly::constant(1), UniPoly::constant(-1)};
  EXPECT_EQ(a * b, SqrtElem::rational_part(UniPoly({Rational(1), Rational(-1)})));
}

TEST(SqrtElem, FloatEvaluationMatchesComponents) {
  const SqrtElem u{UniPoly({Rational(2), make_rational(-1, 3)}), UniPoly({Rational(0), Rational(0), Rational(5)})};
  for (double s : {0.0, 0.04, 0.5, 2.25}) {
    const double expected = 2 - s / 3 + 5 * s * s * std::sqrt(s);
    EXPECT_NEAR(u.eval(s), expected, 1e-13);
  }
  // at s = (3/2)^2 the value is exactly rational
  const Rational r = make_rational(3, 2);
  EXPECT_EQ(u.eval_at_square(r), 2 - r * r / 3 + 5 * rational_pow(r, 5));
}

TEST(SqrtElem, DivisibilityRequiresBothParts) {
  const UniPoly d = UniPoly::monomial(2);
  EXPECT_TRUE(divisibility_check({UniPoly::monomial(3), UniPoly::monomial(2, 4)}, d));
  EXPECT_FALSE(divisibility_check({UniPoly::monomial(3), UniPoly::monomial(1)}, d));
  EXPECT_THROW(divisibility_check({UniPoly::monomial(3), UniPoly()}, UniPoly()), std::invalid_argument);
}
