#include <nashforge/poly.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace nashforge;

namespace {

MultiPoly x(std::size_t nv = 2) { return MultiPoly::variable(nv, 0); }
MultiPoly y(std::size_t nv = 2) { return MultiPoly::variable(nv, 1); }

long binomial(unsigned n, unsigned k) {
  long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * static_cast<long>(n - k + i) / static_cast<long>(i);
  return r;
}

}  // namespace

TEST(MultiPoly, BinomialExpansionMatchesPascal) {
  const MultiPoly p = (x() + y()).pow(7);
  EXPECT_EQ(p.term_count(), 8u);
  for (unsigned i = 0; i <= 7; ++i) EXPECT_EQ(p.coefficient({i, 7 - i}), Rational(binomial(7, i))) << i;
  EXPECT_EQ(p.total_degree(), 7u);
}

TEST(MultiPoly, CancellationLeavesZero) {
  const MultiPoly p = (x() + y()) * (x() - y()) - (x() * x() - y() * y());
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.total_degree(), 0u);
}

TEST(MultiPoly, ExactAndFloatEvaluationAgree) {
  const MultiPoly p = make_rational(3, 7) * x().pow(3) * y() - make_rational(1, 3) * y().pow(2) + MultiPoly::constant(2, 5);
  const std::vector<Rational> q{make_rational(2, 3), make_rational(-5, 4)};
  const std::vector<double> d{2.0 / 3.0, -1.25};
  // hand computed: 3/7 * 8/27 * (-5/4) - 1/3 * 25/16 + 5
  const Rational expected = make_rational(3, 7) * make_rational(8, 27) * make_rational(-5, 4) -
                            make_rational(1, 3) * make_rational(25, 16) + 5;
  EXPECT_EQ(p.eval(std::span<const Rational>(q)), expected);
  EXPECT_NEAR(p.eval(std::span<const double>(d)), expected.get_d(), 1e-14);
  EXPECT_NEAR(FloatPoly(p)(d), expected.get_d(), 1e-14);
}

TEST(MultiPoly, DerivativeMatchesCentralDifferences) {
  const MultiPoly p = x().pow(4) * y() - make_rational(2) * x() * y().pow(3) + x() - MultiPoly::constant(2, 1);
  const auto g = gradient(p);
  ASSERT_EQ(g.size(), 2u);
  const double h = 1e-5;
  for (double px : {-0.7, 0.2, 1.3}) {
    for (double py : {-1.1, 0.4}) {
      for (std::size_t i = 0; i < 2; ++i) {
        std::vector<double> a{px, py}, b{px, py};
        a[i] += h;
        b[i] -= h;
        const double fd = (p.eval(std::span<const double>(a)) - p.eval(std::span<const double>(b))) / (2 * h);
        const std::vector<double> pt{px, py};
        EXPECT_NEAR(g[i].eval(std::span<const double>(pt)), fd, 1e-7);
      }
    }
  }
}

TEST(MultiPoly, EmbedShiftsVariables) {
  const MultiPoly p = x() * y().pow(2);
  const MultiPoly e = p.embed(4, 1);
  EXPECT_EQ(e.nvars(), 4u);
  EXPECT_EQ(e.coefficient({0, 1, 2, 0}), Rational(1));
  EXPECT_FALSE(e.depends_on(0));
  EXPECT_TRUE(e.depends_on(1));
  EXPECT_TRUE(e.depends_on(2));
  EXPECT_FALSE(e.depends_on(3));
}

TEST(MultiPoly, AffineBuildsLinearForm) {
  const std::vector<Rational> c{make_rational(1, 2), make_rational(-3)};
  const MultiPoly p = MultiPoly::affine(c, make_rational(7));
  EXPECT_EQ(p, make_rational(1, 2) * x() - make_rational(3) * y() + MultiPoly::constant(2, 7));
}

TEST(MultiPoly, RingMismatchThrows) {
  EXPECT_THROW(x(2) + x(3), std::invalid_argument);
  const std::vector<double> pt{1.0};
  EXPECT_THROW(x(2).eval(std::span<const double>(pt)), std::invalid_argument);
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), make_rational(-4));
  EXPECT_EQ(parse_rational("0.125"), make_rational(1, 8));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("abc"), std::exception);
}

TEST(Rational, DyadicSnapIsExactForDyadics) {
  EXPECT_EQ(snap_to_dyadic(0.375), make_rational(3, 8));
  const Rational third = snap_to_dyadic(1.0 / 3.0);
  EXPECT_LT(abs(third - make_rational(1, 3)), make_rational(1, 1L << 40));
}
