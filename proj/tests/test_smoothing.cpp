#include <nashforge/smoothing.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace nashforge;

namespace {

// sigma = sum_j C(2k, j) (-1)^j (s/a)^{2kj}, built without the kernel code.
UniPoly sigma_by_binomials(const Rational& a, unsigned k) {
  UniPoly out;
  Integer c = 1;
  for (unsigned j = 0; j <= 2 * k; ++j) {
    const Rational coeff = (j % 2 ? -1 : 1) * Rational(c) / rational_pow(a, 2 * k * j);
    out += UniPoly::monomial(2 * k * j, coeff);
    c = c * (2 * k - j) / (j + 1);
  }
  return out;
}

double naive_kernel(double a, unsigned k, double s) {
  const double sigma = std::pow(1.0 - std::pow(s / a, 2.0 * k), 2.0 * k);
  return sigma * s + (1.0 - sigma) * std::sqrt(s);
}

}  // namespace

TEST(Kernel, ExactSigmaMatchesBinomialExpansion) {
  for (unsigned k = 1; k <= 4; ++k)
    for (const Rational& a : {make_rational(1), make_rational(1, 2), make_rational(1, 4)})
      EXPECT_EQ(kernel_sigma_exact(SmoothingKernel(a, k)), sigma_by_binomials(a, k)) << k;
}

TEST(Kernel, FloatEvaluationMatchesNaiveFormula) {
  const SmoothingKernel K(make_rational(1, 2), 2);
  for (double s : {0.01, 0.1, 0.25, 0.4, 0.49}) {
    EXPECT_NEAR(kernel_eval(K, s), naive_kernel(0.5, 2, s), 1e-13);
    EXPECT_NEAR(kernel_eval(K, s), kernel_exact(K).eval(s), 1e-12);
  }
  EXPECT_EQ(kernel_eval(K, 0.0), 0.0);
  EXPECT_THROW(kernel_eval(K, 0.6), std::domain_error);
  EXPECT_THROW(kernel_eval(K, -0.1), std::domain_error);
}

TEST(Kernel, DerivativeMatchesFiniteDifferences) {
  for (unsigned k : {1u, 2u, 3u}) {
    const SmoothingKernel K(make_rational(1), k);
    for (double s : {0.05, 0.3, 0.6, 0.9}) {
      const double h = 1e-6;
      const double fd = (kernel_eval(K, s + h) - kernel_eval(K, s - h)) / (2 * h);
      EXPECT_NEAR(kernel_derivative(K, s), fd, 1e-6) << k << " " << s;
      EXPECT_GT(kernel_derivative(K, s), 0.0);
    }
  }
}

TEST(Kernel, SeamValueIsSqrtA) {
  for (const Rational& a : {make_rational(1), make_rational(1, 4)}) {
    const SmoothingKernel K(a, 3);
    EXPECT_EQ(kernel_sigma_exact(K).eval(a), 0);
    const Rational root = a == 1 ? Rational(1) : make_rational(1, 2);
    EXPECT_EQ(kernel_exact(K).eval_at_square(root), root);
  }
}

TEST(Kernel, TaylorCertificatesHaveExpectedOrders) {
  for (unsigned k = 1; k <= 5; ++k) {
    const SmoothingKernel K(make_rational(1, 2), k);
    const TaylorCertificate c = taylor_at_zero_certificate(K);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.rational_part_order, static_cast<int>(2 * k + 1));
    EXPECT_EQ(c.sqrt_part_order, static_cast<int>(2 * k));
    EXPECT_TRUE(taylor_at_a_certificate(K));
    // the (s - a)^{2k} bound is sharp: one more power fails
    const SqrtElem diff = kernel_exact(K) - SqrtElem::sqrt_s();
    EXPECT_FALSE(divisibility_check(diff, shifted_power(K.a(), 2 * k + 1)));
  }
}

TEST(Kernel, ExactGridAgreesWithFloats) {
  const SmoothingKernel K(make_rational(1, 4), 2);
  const KernelGridCheck g = kernel_grid_exact(K, 2000);
  EXPECT_TRUE(g.strictly_increasing);
  EXPECT_TRUE(g.below_sqrt);
  EXPECT_TRUE(g.above_s);
  // same statements in floating point on a coarser grid
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = 0.25 * (i / 200.0) * (i / 200.0);
    const double f = kernel_eval(K, s);
    EXPECT_GE(f, prev);
    EXPECT_LE(f, std::sqrt(s) + 1e-15);
    EXPECT_GE(f, s - 1e-15);
    prev = f;
  }
}

TEST(Fold1D, PiecesAndSeam) {
  const FoldMap1D F{SmoothingKernel(make_rational(1, 2), 2)};
  EXPECT_EQ(fold1d(F, -0.3), 0.09);
  EXPECT_EQ(fold1d(F, 1.7), 1.7);
  EXPECT_NEAR(fold1d(F, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(fold1d(F, 0.5 + 1e-9), fold1d(F, 0.5 - 1e-9), 1e-8);
}

TEST(Fold1D, LocalModelSlope) {
  for (unsigned k : {1u, 2u, 3u}) {
    const FoldMap1D F{SmoothingKernel(make_rational(1, 2), k)};
    const std::vector<double> radii{0.125, 0.0625, 0.03125, 0.015625};
    EXPECT_GE(fold_local_model_slope(F, radii), 2.0 * k - 1.5) << k;
  }
  const FoldMap1D F{SmoothingKernel(make_rational(1, 2), 1)};
  EXPECT_THROW(fold_local_model_check(F, 0.3), std::domain_error);
}

TEST(Fold1D, DeviationMatchesDirectFormulaForSmallK) {
  const FoldMap1D F{SmoothingKernel(make_rational(1, 2), 1)};
  double direct = 0.0;
  for (int i = 1; i <= 4096; ++i) {
    const double x = 0.125 * i / 4096.0;
    direct = std::max(direct, std::abs(fold1d(F, x) / (x * x) - 1.0));
  }
  EXPECT_NEAR(fold_local_model_check(F, 0.125), direct, 1e-12);
}

TEST(Fold2D, AxesAndCoverage) {
  const SmoothingKernel K(make_rational(1, 2), 1);
  const FoldMap2D F{{K, K}};
  for (double u : {-0.7, 0.0, 0.2, 1.4}) {
    EXPECT_EQ(fold2d(F, {u, 0.0})[1], 0.0);
    EXPECT_EQ(fold2d(F, {0.0, u})[0], 0.0);
  }
  const QuadrantCoverage cov = fold2d_coverage(F, 80);
  EXPECT_TRUE(cov.pass());
  EXPECT_LE(cov.hausdorff, 2 * cov.step);
}

TEST(Mostowski, LastCoordinateIsReciprocalOfH) {
  const MostowskiMap M = mostowski_half_open_interval();
  const std::vector<Rational> x{make_rational(999, 1000)};
  const auto img = mostowski_embed(M, std::span<const Rational>(x));
  ASSERT_EQ(img.size(), 2u);
  EXPECT_EQ(img[1], Rational(1000));
  const std::vector<Rational> edge{Rational(1)};
  EXPECT_THROW(mostowski_embed(M, std::span<const Rational>(edge)), std::domain_error);
  const MostowskiMap D = mostowski_open_disk();
  const std::vector<double> p{0.3, -0.4};
  const auto e = mostowski_embed(D, std::span<const double>(p));
  EXPECT_NEAR(e[2], 1.0 / 0.75, 1e-14);
  EXPECT_EQ(mostowski_project(D, std::span<const double>(e)), p);
}
